#ifndef EUCLID_RESIDUE_HPP
#define EUCLID_RESIDUE_HPP

#include "euclid/ideal.hpp"

namespace euclid {

/* The residue field O_K/p of a prime ideal.  Elements are canonical
 * indices in [0, Nm(p)): for residue degree 1 the class of the rational
 * integer i; for degree 2 the index i + j*p standing for i + j*omega.
 */
class ResidueField
{
  public:
    ResidueField(FieldDesc const & F, PrimeIdeal const & P);

    mpz_class const & p() const { return p_; }
    int degree() const { return deg_; }
    mpz_class const & order() const { return order_; }        // Nm(p)
    mpz_class const & unit_order() const { return uorder_; }  // Nm(p) - 1

    /* Canonical residue of x; the denominator must be coprime to p. */
    mpz_class reduce(Elem const & x) const;

    mpz_class zero() const { return 0; }
    mpz_class one() const { return 1; }

    mpz_class add(mpz_class const & x, mpz_class const & y) const;
    mpz_class neg(mpz_class const & x) const;
    mpz_class mul(mpz_class const & x, mpz_class const & y) const;
    mpz_class pow(mpz_class const & x, mpz_class e) const;
    mpz_class inv(mpz_class const & x) const;   // throws on zero

    /* Multiplicative order of a nonzero residue, via the factored group
     * order.  Throws on zero.
     */
    mpz_class element_order(mpz_class const & x) const;

    /* Order of the subgroup generated by the given nonzero residues:
     * the lcm of their element orders (the unit group is cyclic).
     */
    mpz_class subgroup_order(std::vector<mpz_class> const & gens) const;

  private:
    mpz_class p_;
    int deg_;
    long t_, n0_;        // omega^2 = t*omega - n0 (mod p), degree 2 only
    mpz_class omega_;    // residue of omega, degree 1 only
    mpz_class order_, uorder_;
    std::vector<std::pair<mpz_class, int>> uorder_factors_;
};

/* Prime factorization by trial division; fine for the desk-scale inputs
 * here (group orders are at most Nm(p)^2 with Nm(p) <= 10^6 or so).
 */
std::vector<std::pair<mpz_class, int>> trial_factor(mpz_class n);

}  // namespace euclid

#endif
