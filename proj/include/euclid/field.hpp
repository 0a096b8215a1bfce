#ifndef EUCLID_FIELD_HPP
#define EUCLID_FIELD_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace euclid {

/* An element of a quadratic field Q(sqrt(d)), written a + b*omega over a
 * positive denominator in lowest terms.  omega is sqrt(d) for d = 2, 3
 * (mod 4) and (1 + sqrt(d))/2 for d = 1 (mod 4), so {1, omega} is always
 * an integral basis and den == 1 characterises algebraic integers.
 */
struct Elem
{
    mpz_class a, b;
    mpz_class den = 1;

    Elem() = default;
    Elem(mpz_class a0, mpz_class b0, mpz_class d0 = 1);

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_integral() const { return den == 1; }

    bool operator==(Elem const & o) const
    {
        return a == o.a && b == o.b && den == o.den;
    }
    bool operator!=(Elem const & o) const { return !(*this == o); }
    bool operator<(Elem const & o) const;   // arbitrary total order, for maps

    std::string str() const;
};

class FieldDesc
{
  public:
    explicit FieldDesc(long d);

    long d() const { return d_; }
    long disc() const { return disc_; }
    bool imaginary() const { return d_ < 0; }
    bool real() const { return d_ > 0; }

    /* omega satisfies omega^2 = trace_omega * omega - norm_omega. */
    long trace_omega() const { return t_; }
    long norm_omega() const { return n0_; }

    Elem omega() const { return Elem(0, 1); }
    Elem one() const { return Elem(1, 0); }

    Elem add(Elem const & x, Elem const & y) const;
    Elem sub(Elem const & x, Elem const & y) const;
    Elem neg(Elem const & x) const;
    Elem mul(Elem const & x, Elem const & y) const;
    Elem mul_int(Elem const & x, mpz_class const & n) const;
    Elem div_int(Elem const & x, mpz_class const & n) const;
    Elem conj(Elem const & x) const;
    Elem inverse(Elem const & x) const;
    Elem div(Elem const & x, Elem const & y) const;
    Elem pow(Elem const & x, unsigned long e) const;

    mpq_class norm(Elem const & x) const;
    /* Norm of an integral element; throws if den != 1. */
    mpz_class norm_z(Elem const & x) const;
    mpq_class trace(Elem const & x) const;

    /* Sign of the image of x under the embedding sending sqrt(d) to the
     * positive real root.  Real fields only.
     */
    int embedding_sign(Elem const & x) const;
    /* Compare the first embeddings of x and y exactly (-1, 0, +1). */
    int embedding_cmp(Elem const & x, Elem const & y) const;
    /* Compare arguments of x and y in [0, 2*pi).  Imaginary fields only. */
    int arg_cmp(Elem const & x, Elem const & y) const;

  private:
    long d_, disc_, t_, n0_;
};

struct UnitGroup
{
    long torsion_order;               // 2, 4 (d = -1) or 6 (d = -3)
    std::vector<Elem> torsion;        // all roots of unity, identity first
    std::optional<Elem> fundamental;  // absent iff d < 0
};

FieldDesc make_field(long d);

/* Least unit > 1 under the fixed real embedding; Pell-type minimal
 * solution, computed from the continued fraction of omega.
 */
Elem fundamental_unit(FieldDesc const & F);

std::vector<Elem> torsion_units(FieldDesc const & F);

UnitGroup unit_group(FieldDesc const & F);

/* Multiplicative generators of the full unit group: a torsion generator,
 * plus the fundamental unit for real fields.
 */
std::vector<Elem> unit_generators(FieldDesc const & F);

bool is_unit(FieldDesc const & F, Elem const & x);

/* Write u as zeta^j * eps^k; returns (j, k) or nothing if u is not a unit. */
std::optional<std::pair<long, long>> unit_decompose(FieldDesc const & F,
                                                    Elem const & u);

}  // namespace euclid

#endif
