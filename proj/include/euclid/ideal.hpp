#ifndef EUCLID_IDEAL_HPP
#define EUCLID_IDEAL_HPP

#include "euclid/field.hpp"

#include <map>
#include <optional>
#include <vector>

namespace euclid {

struct NonCyclicClassGroup : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct NotPrincipal : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/* Nonzero integral ideal in Hermite normal form: the module
 * a*c*Z + c*(b + omega)*Z with a, c > 0 and 0 <= b < a.
 * The representation is unique, so equality is coefficient equality.
 */
struct IntegralIdeal
{
    mpz_class a = 1, b = 0, c = 1;

    bool operator==(IntegralIdeal const & o) const
    {
        return a == o.a && b == o.b && c == o.c;
    }
    bool operator!=(IntegralIdeal const & o) const { return !(*this == o); }
    bool operator<(IntegralIdeal const & o) const
    {
        if (int r = cmp(a, o.a))
            return r < 0;
        if (int r = cmp(b, o.b))
            return r < 0;
        return c < o.c;
    }
    bool is_one() const { return a == 1 && b == 0 && c == 1; }
    mpz_class norm() const { return a * c * c; }
    std::string str() const;
};

/* num / den, reduced so that no rational prime divides den and is
 * extractable from num.
 */
struct FractionalIdeal
{
    IntegralIdeal num;
    mpz_class den = 1;

    FractionalIdeal() = default;
    FractionalIdeal(IntegralIdeal n, mpz_class d = 1);

    bool operator==(FractionalIdeal const & o) const
    {
        return den == o.den && num == o.num;
    }
    bool operator!=(FractionalIdeal const & o) const { return !(*this == o); }
    bool operator<(FractionalIdeal const & o) const
    {
        if (int r = cmp(den, o.den))
            return r < 0;
        return num < o.num;
    }
    bool is_integral() const { return den == 1; }
    bool is_one() const { return den == 1 && num.is_one(); }
    mpq_class norm() const;
    std::string str() const;
};

enum class SplitType { split, inert, ramified };

struct PrimeIdeal
{
    mpz_class p;
    int residue_degree;   // 1 or 2
    SplitType split_type;
    IntegralIdeal hnf;

    mpz_class norm() const { return hnf.norm(); }
    bool operator<(PrimeIdeal const & o) const { return hnf < o.hnf; }
    bool operator==(PrimeIdeal const & o) const { return hnf == o.hnf; }
};

/* Build the ideal generated (as a Z-module) by the given elements and
 * their omega-multiples; all denominators must be 1.
 */
IntegralIdeal ideal_from_generators(FieldDesc const & F,
                                    std::vector<Elem> const & gens);
IntegralIdeal principal_ideal(FieldDesc const & F, Elem const & g);
IntegralIdeal conj_ideal(FieldDesc const & F, IntegralIdeal const & I);

bool contains(FieldDesc const & F, IntegralIdeal const & I, Elem const & x);
bool contains(FieldDesc const & F, FractionalIdeal const & I, Elem const & x);

IntegralIdeal mul(FieldDesc const & F, IntegralIdeal const & I,
                  IntegralIdeal const & J);
FractionalIdeal mul(FieldDesc const & F, FractionalIdeal const & I,
                    FractionalIdeal const & J);
FractionalIdeal mul(FieldDesc const & F, Elem const & g,
                    FractionalIdeal const & I);
FractionalIdeal inverse(FieldDesc const & F, FractionalIdeal const & I);
FractionalIdeal principal_fractional(FieldDesc const & F, Elem const & g);
FractionalIdeal ideal_sum(FieldDesc const & F, FractionalIdeal const & I,
                          FractionalIdeal const & J);
FractionalIdeal pow(FieldDesc const & F, FractionalIdeal const & I, long e);

std::vector<std::pair<PrimeIdeal, int>> factor_prime(mpz_class const & p,
                                                     FieldDesc const & F);

long valuation(FieldDesc const & F, FractionalIdeal const & I,
               PrimeIdeal const & P);

/* A generator if I is principal, nothing otherwise.  Exhaustive search
 * over lattice points of the exact target norm, unit-reduced for real
 * fields.
 */
std::optional<Elem> is_principal(FieldDesc const & F,
                                 FractionalIdeal const & I);
std::optional<Elem> is_principal(FieldDesc const & F, IntegralIdeal const & I);

/* The unique unit-normalised generator: positive minimal first embedding
 * for real fields, minimal argument in [0, 2pi) for imaginary fields.
 * Throws NotPrincipal.
 */
Elem canonical_generator(FieldDesc const & F, FractionalIdeal const & I);
Elem canonical_unit_normalize(FieldDesc const & F, Elem const & g);

struct IdealClass
{
    long k = 0;   // exponent with respect to the group's fixed generator

    bool operator==(IdealClass const & o) const { return k == o.k; }
};

class ClassGroup
{
  public:
    static ClassGroup compute(FieldDesc const & F);

    long h() const { return h_; }
    /* Generating prime of least norm; absent when h = 1. */
    std::optional<PrimeIdeal> const & generator() const { return gen_; }
    FractionalIdeal generator_power(long k) const;
    IdealClass ideal_class(FractionalIdeal const & I) const;
    IdealClass ideal_class(IntegralIdeal const & I) const;

    FieldDesc const & field() const { return F_; }

  private:
    explicit ClassGroup(FieldDesc F) : F_(std::move(F)) {}

    FieldDesc F_;
    long h_ = 1;
    std::optional<PrimeIdeal> gen_;
    std::vector<FractionalIdeal> gen_powers_;       // gen^0 .. gen^{h-1}
    std::vector<FractionalIdeal> gen_inv_powers_;   // gen^0 .. gen^{-(h-1)}
};

ClassGroup class_group(FieldDesc const & F);

/* All integral ideals in HNF with norm <= bound, sorted. */
std::vector<IntegralIdeal> ideals_up_to(FieldDesc const & F, long bound);

/* --- rank-2 lattices in K, used for coset enumeration ---------------- */

/* Z-lattice spanned by v1/den and v2/den, with v1 = (e, 0) and
 * v2 = (f, g) in the (1, omega) basis; e, g > 0, 0 <= f < e.
 */
struct Lattice2
{
    mpz_class e, f, g;
    mpz_class den = 1;
};

Lattice2 lattice_of(FractionalIdeal const & I);
bool lattice_contains(Lattice2 const & L, Elem const & x);

/* Coset representatives of the sublattice S inside L (S must be contained
 * in L); exactly [L:S] of them, the zero coset first, deterministic order.
 */
std::vector<Elem> lattice_quotient_reps(Lattice2 const & L, Lattice2 const & S);

/* Index of x's coset among the representatives returned above. */
std::pair<mpz_class, mpz_class> lattice_coset_id(Lattice2 const & L,
                                                 Lattice2 const & S,
                                                 Elem const & x);

}  // namespace euclid

#endif
