#ifndef EUCLID_SURVEY_HPP
#define EUCLID_SURVEY_HPP

#include "euclid/euclidean_core.hpp"

namespace euclid {

/* Per-prime-ideal scan data.  The starred fields depend only on (d, p)
 * and are what the cache stores; the flags are filled in against the
 * chosen ideal C when a scan is answered.
 */
struct ScanIdeal
{
    IntegralIdeal hnf;     // *
    mpz_class norm;        // *
    int residue_degree;    // *
    SplitType split_type;  // *
    long class_exp;        // * exponent w.r.t. the class-group generator
    mpz_class f;           // * order of the unit image mod p
    bool surjective;       // * f = Nm(p) - 1
    bool divides_C = false;
    bool b1_member = false;   // class match + surjectivity, p coprime to C
};

struct ScanRecord
{
    mpz_class p;
    std::vector<ScanIdeal> ideals;   // ordered by HNF
};

struct ScanOptions
{
    long jobs = 1;
    std::string cache_dir;   // empty: consult EUCIDEAL_CACHE_DIR, else none
};

/* Records for every rational prime p <= X in ascending order.  Cache-backed:
 * results are bit-identical whether they were computed or replayed, and a
 * record failing its checksum is recomputed.
 */
std::vector<ScanRecord> scan(FieldDesc const & F, ClassGroup const & G,
                             IntegralIdeal const & C, long X,
                             ScanOptions const & opts = {});

struct GrowthPoint
{
    long x = 0;
    long count = 0;
    double reference = 0;   // heuristic reference column, not a claim
    double ratio = 0;       // count / reference
};

struct GrowthReport
{
    std::vector<GrowthPoint> points;
    std::string reference_label;

    std::string csv() const;       // ratio columns fixed to 6 decimals
    std::string to_json() const;
};

/* Primes with Nm(p) <= x certified in the first level: class match plus
 * unit surjectivity.  Reference column x / log^2 x.
 */
GrowthReport b1_count(FieldDesc const & F, ClassGroup const & G,
                      IntegralIdeal const & C, std::vector<long> const & x_grid,
                      ScanOptions const & opts = {});

/* Lower bound for the second level: first-level primes plus primes of
 * class [C^2] for which every nonzero coset of p^-1 C / C has a witness
 * of height <= H whose target is the ring or a first-level prime inverse.
 * Requires h <= 2 (targets can only match the first level when
 * [C^-1] = [C]).  Reference column x / (h log x).
 */
GrowthReport b2_lower_bound(FieldDesc const & F, ClassGroup const & G,
                            IntegralIdeal const & C,
                            std::vector<long> const & x_grid, long H,
                            ScanOptions const & opts = {});

struct FixtureReport
{
    long d = 0;
    IntegralIdeal C;
    bool covered = false;    // every enumerated ideal received a level
    bool verified = false;   // independent witness recheck
    long max_level = 0;
    double seconds = 0;
};

/* Level search + independent verification over the seven imaginary fields
 * with a Euclidean ideal (d = -1, -2, -3, -5, -7, -11, -15), with C a
 * class-group generator, at B = 30, H = 20, k = 6.  A failure names the
 * field instead of silently dropping it.
 */
std::vector<FixtureReport> certify_fixtures();

/* Single-field version usable for arbitrary d (coverage may fail; the
 * report simply records it).
 */
FixtureReport certify_field(long d, IntegralIdeal const & C, long B, long H,
                            long k);

}  // namespace euclid

#endif
