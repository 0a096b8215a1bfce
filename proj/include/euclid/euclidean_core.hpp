#ifndef EUCLID_EUCLIDEAN_CORE_HPP
#define EUCLID_EUCLIDEAN_CORE_HPP

#include "euclid/ideal.hpp"

#include <map>

namespace euclid {

struct ClassMismatch : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/* A fractional ideal I containing the ring, stored through its integral
 * inverse: I = inv^-1.
 */
struct EIdeal
{
    IntegralIdeal inv;

    bool is_ring() const { return inv.is_one(); }
    mpz_class norm_inv() const { return inv.norm(); }
    FractionalIdeal ideal(FieldDesc const & F) const
    {
        return inverse(F, FractionalIdeal(inv));
    }
    bool operator==(EIdeal const & o) const { return inv == o.inv; }
    bool operator<(EIdeal const & o) const { return inv < o.inv; }
};

/* One coset of C inside IC. */
struct CosetRep
{
    Elem value;
    bool zero = false;
};

/* Representatives of IC/C, exactly Nm(inv) of them, zero coset first,
 * deterministic order.
 */
std::vector<CosetRep> cosets(FieldDesc const & F, EIdeal const & I,
                             IntegralIdeal const & C);

/* True iff (x) + C = IC; x must lie in IC. */
bool generates_module(FieldDesc const & F, Elem const & x, EIdeal const & I,
                      IntegralIdeal const & C);

/* Fixed canonical generators: x attached to I under power n satisfies
 * (x) = I^-1 C^n = inv * C^n, and x lies in C^n.
 */
class GeneratorTable
{
  public:
    GeneratorTable(FieldDesc F, IntegralIdeal C, ClassGroup G)
        : F_(std::move(F)), C_(std::move(C)), G_(std::move(G))
    {
    }

    /* Requires [I] = [C^n]; throws ClassMismatch otherwise. */
    Elem const & x_of(EIdeal const & I, long n);
    /* x_p for a prime: (x_p) = p * C^(n-1), requires [p^-1] = [C^(n-1)]. */
    Elem const & x_of(PrimeIdeal const & p, long n);

    FieldDesc const & field() const { return F_; }
    IntegralIdeal const & C() const { return C_; }
    ClassGroup const & group() const { return G_; }

  private:
    FieldDesc F_;
    IntegralIdeal C_;
    ClassGroup G_;
    std::map<std::pair<IntegralIdeal, long>, Elem> cache_;
};

/* Lemma check: multiplication by x_p maps p^-1 C / C bijectively onto
 * C^n / p C^n.
 */
bool mult_xp_iso_check(GeneratorTable & T, PrimeIdeal const & p, long n);

/* Exact level-1 membership: [p] = [C] and the unit group surjects onto
 * (O_K/p)^x.  Throws if p divides C.
 */
bool is_b1_member(FieldDesc const & F, PrimeIdeal const & p,
                  IntegralIdeal const & C, ClassGroup const & G);

/* Levels follow the two-component Euclidean function phi = (omega, lambda):
 * omega = number of prime divisors of I^-1 with multiplicity, lambda = the
 * prime-restricted construction depth, extended additively.  The pair is
 * stored as the single integer omega * motzkin_omega_base + lambda, which
 * preserves the lexicographic order at this scale, so a level assignment
 * is valid exactly when every witness descends strictly.
 */
inline constexpr long motzkin_omega_base = 1024;

struct LevelWitness
{
    IntegralIdeal inv;   // the ideal I = inv^-1 the witness belongs to
    Elem coset;          // representative x of the coset in IC/C
    Elem y;              // element of C with (x+y)^-1 IC assigned lower
};

struct LevelAssignment
{
    long d = 0;
    IntegralIdeal C;
    long B = 0, H = 0, k = 0;
    std::map<IntegralIdeal, long> levels;   // keyed by inv
    std::vector<LevelWitness> witnesses;

    bool assigned(EIdeal const & I) const { return levels.count(I.inv) > 0; }
    long level(EIdeal const & I) const { return levels.at(I.inv); }
    bool full_coverage() const;   // every enumerated ideal got a level

    std::string to_json() const;   // versioned, byte-stable

    std::vector<IntegralIdeal> enumerated;   // all inv with Nm <= B, sorted
};

/* Bounded Motzkin-type level search over all E-ideals with Nm(inv) <= B.
 * Witness y ranges over C-elements with integral-basis coordinates in
 * [-H, H]; depth capped at k.  Non-assignment is inconclusive.
 */
LevelAssignment motzkin_search(FieldDesc const & F, IntegralIdeal const & C,
                               ClassGroup const & G, long B, long H, long k);

/* Independent recheck of every stored witness and of coverage of every
 * nonzero coset of each assigned ideal.
 */
bool verify_assignment(FieldDesc const & F, LevelAssignment const & L,
                       IntegralIdeal const & C);

/* Probe of the positive-density lemma: counts distinct prime ideals
 * q = (x+y) I^-1 C^-1 with Nm(q) <= X over witnesses y of height <= H.
 * Requires generates_module(x, I, C).
 */
std::pair<long, std::vector<std::pair<Elem, IntegralIdeal>>>
similar_density(FieldDesc const & F, Elem const & x, EIdeal const & I,
                IntegralIdeal const & C, long X, long H);

/* Elements of the ideal J with both integral-basis coordinates in
 * [-H, H], in a fixed deterministic order (zero first).
 */
std::vector<Elem> ideal_box(FieldDesc const & F, IntegralIdeal const & J,
                            long H);

}  // namespace euclid

#endif
