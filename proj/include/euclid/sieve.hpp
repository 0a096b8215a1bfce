#ifndef EUCLID_SIEVE_HPP
#define EUCLID_SIEVE_HPP

#include "euclid/euclidean_core.hpp"
#include "euclid/residue.hpp"

namespace euclid {

struct UnitImage
{
    PrimeIdeal p;
    mpz_class f;       // order of the image of the unit group in (O_K/p)^x
    bool surjective;   // f = Nm(p) - 1
};

UnitImage f_p(FieldDesc const & F, PrimeIdeal const & P);

/* Distinct residues of the unit group in O_K/p, sorted by canonical
 * residue index; exactly f(p) of them.
 */
std::vector<mpz_class> unit_image_residues(FieldDesc const & F,
                                           ResidueField const & R);

/* Size of the image in O_K/p of the multiplicative monoid generated by
 * gens (empty product included).  Generators meeting p are rejected.
 */
mpz_class f_monoid(FieldDesc const & F, PrimeIdeal const & P,
                   std::vector<Elem> const & gens);

/* Exact multiplicative independence: no nonzero integer exponent tuple
 * makes the product 1.  Decided through prime valuations plus the unit
 * decomposition of the residual relation.
 */
bool multiplicatively_independent(FieldDesc const & F,
                                  std::vector<Elem> const & xs);

struct GuptaMurtyRow
{
    long y;
    long count;     // primes with Nm(p) <= X and f(p) <= y
    long y_squared; // heuristic reference column, t = 1
};

std::vector<GuptaMurtyRow> gupta_murty_scan(FieldDesc const & F, long X,
                                            std::vector<long> const & y_grid);

struct SievePanel
{
    std::vector<EIdeal> A;        // test ideals, all in class [C^n]
    std::vector<Elem> script_A;   // the fixed x_I, pairwise non-associated
    std::vector<PrimeIdeal> P;    // sieving primes, [p^-1] = [C^(n-1)]
    mpz_class X;                  // max Nm(I^-1) over A
    mpz_class Q;                  // max Nm(p) over P
    long n = 1;
};

/* Assemble the standard panel: A = all E-ideals of class [C^n] with
 * Nm(I^-1) <= X, script_A through the generator table, P = primes of the
 * matching class with Nm(p) <= Q, coprime to C.
 */
SievePanel make_panel(GeneratorTable & T, long n, long X, long Q);

long z_alpha(ResidueField const & R, std::vector<Elem> const & script_A,
             mpz_class const & alpha_residue);

/* Z(beta, p, C) via the closed form: f(p) * Z(0, p) on the zero coset,
 * otherwise the sum of Z(u * beta * x_p, p) over unit representatives.
 */
mpz_class z_beta(GeneratorTable & T, SievePanel const & panel,
                 Elem const & beta, PrimeIdeal const & p);

/* The definitional count: ideals I in A reached by (beta+y)^-1 p^-1 C
 * for some y in C, scaled by f(p) on the zero coset.  Witness elements
 * beta + y are searched among generators of the target ideal with unit
 * exponent at most H, so the search is complete whenever H is at least
 * half the order of the fundamental unit mod p.
 */
mpz_class z_beta_bruteforce(GeneratorTable & T, SievePanel const & panel,
                            Elem const & beta, PrimeIdeal const & p, long H);

/* Number of cosets beta of p^-1 C / C with Z(beta, p, C) = 0. */
mpz_class omega_p(GeneratorTable & T, SievePanel const & panel,
                  PrimeIdeal const & p);

struct PanelReport
{
    mpq_class lhs, rhs_raw, ratio;
    std::string to_json() const;   // exact rationals as "num/den" strings
};

/* Variance comparison: sum over beta of (Z(beta)/f - |A|/Nm(p))^2 is at
 * most the full residue variance sum over alpha of (Z(alpha) - |A|/Nm(p))^2;
 * throws std::logic_error if the exact inequality ever failed.
 */
PanelReport sieve_heart_check(GeneratorTable & T, SievePanel const & panel,
                              PrimeIdeal const & p);

struct LargeSieveReport
{
    mpq_class S;         // sum over p of Nm(p) * variance(p)
    mpq_class W;         // sum over p of omega(p)/Nm(p)
    mpq_class s_ratio;   // S / ((Q^2 + X) |A|)
    mpq_class w_ratio;   // W |A| / (Q^2 + X)
    std::string to_json() const;
};

LargeSieveReport large_sieve_panel(GeneratorTable & T,
                                   SievePanel const & panel);

}  // namespace euclid

#endif
