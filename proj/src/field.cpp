#include "euclid/field.hpp"

#include <algorithm>
#include <sstream>

namespace euclid {

namespace {

void normalize(mpz_class & a, mpz_class & b, mpz_class & den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    if (den < 0) {
        a = -a;
        b = -b;
        den = -den;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        a /= g;
        b /= g;
        den /= g;
    }
}

/* Sign of A + B*sqrt(d), d > 0, A and B integers. */
int sign_quad(mpz_class const & A, mpz_class const & B, long d)
{
    int sa = sgn(A), sb = sgn(B);
    if (sa >= 0 && sb >= 0)
        return (sa == 0 && sb == 0) ? 0 : 1;
    if (sa <= 0 && sb <= 0)
        return -1;
    mpz_class lhs = A * A, rhs = B * B * d;
    int c = cmp(lhs, rhs);
    if (c == 0)
        return 0;   // cannot happen for square-free d and B != 0
    return sa > 0 ? c : -c;
}

}  // namespace

Elem::Elem(mpz_class a0, mpz_class b0, mpz_class d0)
    : a(std::move(a0)), b(std::move(b0)), den(std::move(d0))
{
    normalize(a, b, den);
}

bool Elem::operator<(Elem const & o) const
{
    if (int c = cmp(a, o.a))
        return c < 0;
    if (int c = cmp(b, o.b))
        return c < 0;
    return den < o.den;
}

std::string Elem::str() const
{
    std::ostringstream os;
    if (den == 1)
        os << a << (b >= 0 ? "+" : "") << b << "w";
    else
        os << "(" << a << (b >= 0 ? "+" : "") << b << "w)/" << den;
    return os.str();
}

FieldDesc::FieldDesc(long d) : d_(d)
{
    if (d == 0 || d == 1)
        throw std::invalid_argument("d must not be 0 or 1");
    long ad = std::labs(d);
    for (long q = 2; q * q <= ad; ++q) {
        if (ad % (q * q) == 0)
            throw std::invalid_argument("d has square factor " +
                                        std::to_string(q * q));
    }
    long r = ((d % 4) + 4) % 4;
    if (r == 1) {
        disc_ = d;
        t_ = 1;
        n0_ = (1 - d) / 4;
    } else {
        disc_ = 4 * d;
        t_ = 0;
        n0_ = -d;
    }
}

Elem FieldDesc::add(Elem const & x, Elem const & y) const
{
    return Elem(x.a * y.den + y.a * x.den, x.b * y.den + y.b * x.den,
                x.den * y.den);
}

Elem FieldDesc::sub(Elem const & x, Elem const & y) const
{
    return Elem(x.a * y.den - y.a * x.den, x.b * y.den - y.b * x.den,
                x.den * y.den);
}

Elem FieldDesc::neg(Elem const & x) const
{
    Elem r = x;
    r.a = -r.a;
    r.b = -r.b;
    return r;
}

Elem FieldDesc::mul(Elem const & x, Elem const & y) const
{
    // omega^2 = t*omega - n0
    mpz_class bb = x.b * y.b;
    mpz_class a = x.a * y.a - n0_ * bb;
    mpz_class b = x.a * y.b + x.b * y.a + t_ * bb;
    return Elem(std::move(a), std::move(b), x.den * y.den);
}

Elem FieldDesc::mul_int(Elem const & x, mpz_class const & n) const
{
    return Elem(x.a * n, x.b * n, x.den);
}

Elem FieldDesc::div_int(Elem const & x, mpz_class const & n) const
{
    return Elem(x.a, x.b, x.den * n);
}

Elem FieldDesc::conj(Elem const & x) const
{
    return Elem(x.a + t_ * x.b, -x.b, x.den);
}

Elem FieldDesc::inverse(Elem const & x) const
{
    if (x.is_zero())
        throw std::invalid_argument("inverse of zero");
    // 1/x = conj(x) / Nm(x), with Nm over the numerator.
    mpz_class nm = (x.a + t_ * x.b) * x.a + n0_ * x.b * x.b;
    Elem c(x.a + t_ * x.b, -x.b, 1);
    if (nm < 0) {
        c = neg(c);
        nm = -nm;
    }
    return Elem(c.a * x.den, c.b * x.den, nm);
}

Elem FieldDesc::div(Elem const & x, Elem const & y) const
{
    return mul(x, inverse(y));
}

Elem FieldDesc::pow(Elem const & x, unsigned long e) const
{
    Elem r = one(), base = x;
    while (e) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

mpq_class FieldDesc::norm(Elem const & x) const
{
    mpz_class num = (x.a + t_ * x.b) * x.a + n0_ * x.b * x.b;
    mpq_class q(num, x.den * x.den);
    q.canonicalize();
    return q;
}

mpz_class FieldDesc::norm_z(Elem const & x) const
{
    if (x.den != 1)
        throw std::invalid_argument("norm_z of non-integral element");
    return (x.a + t_ * x.b) * x.a + n0_ * x.b * x.b;
}

mpq_class FieldDesc::trace(Elem const & x) const
{
    mpq_class q(2 * x.a + t_ * x.b, x.den);
    q.canonicalize();
    return q;
}

int FieldDesc::embedding_sign(Elem const & x) const
{
    if (d_ < 0)
        throw std::domain_error("embedding_sign needs a real field");
    // x = A + B sqrt(d) up to a positive factor
    if (t_ == 1)
        return sign_quad(2 * x.a + x.b, x.b, d_);
    return sign_quad(x.a, x.b, d_);
}

int FieldDesc::embedding_cmp(Elem const & x, Elem const & y) const
{
    return embedding_sign(sub(x, y));
}

int FieldDesc::arg_cmp(Elem const & x, Elem const & y) const
{
    if (d_ > 0)
        throw std::domain_error("arg_cmp needs an imaginary field");
    if (x.is_zero() || y.is_zero())
        throw std::invalid_argument("arg_cmp of zero");
    // Planar coordinates (A, B*sqrt(|d|)) up to a positive factor
    mpz_class Ax = t_ == 1 ? mpz_class(2 * x.a + x.b) : x.a;
    mpz_class Bx = x.b;
    mpz_class Ay = t_ == 1 ? mpz_class(2 * y.a + y.b) : y.a;
    mpz_class By = y.b;
    auto half = [](mpz_class const & A, mpz_class const & B) {
        return (B > 0 || (B == 0 && A > 0)) ? 0 : 1;
    };
    int hx = half(Ax, Bx), hy = half(Ay, By);
    if (hx != hy)
        return hx < hy ? -1 : 1;
    mpz_class cross = Ax * By - Ay * Bx;
    return -sgn(cross);
}

FieldDesc make_field(long d)
{
    return FieldDesc(d);
}

namespace {

/* Minimal solution of |x^2 - d y^2| = 1 with y >= 1, from the continued
 * fraction convergents of sqrt(d).
 */
std::pair<mpz_class, mpz_class> pell_min(long d)
{
    mpz_class D(d), s;
    mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
    mpz_class P = 0, Q = 1;
    mpz_class h2 = 0, h1 = 1, k2 = 1, k1 = 0;   // h_{-2}, h_{-1}, ...
    for (int iter = 0; iter < 100000; ++iter) {
        mpz_class ai = (P + s) / Q;
        mpz_class h = ai * h1 + h2, k = ai * k1 + k2;
        mpz_class nm = h * h - D * k * k;
        if (k >= 1 && (nm == 1 || nm == -1))
            return {h, k};
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        P = ai * Q - P;
        Q = (D - P * P) / Q;
    }
    throw std::runtime_error("Pell iteration limit exceeded");
}

}  // namespace

Elem fundamental_unit(FieldDesc const & F)
{
    if (F.imaginary())
        throw std::domain_error("fundamental unit of an imaginary field");
    auto [x, y] = pell_min(F.d());
    if (F.trace_omega() == 1) {
        // d = 1 mod 4: the unit of Z[sqrt(d)] may be the cube of a
        // half-integral unit (a + b sqrt(d))/2; then d b^3 +- 3b = 2y.
        mpz_class target = 2 * y, broot;
        mpz_class t3 = target / F.d();
        mpz_root(broot.get_mpz_t(), t3.get_mpz_t(), 3);
        for (mpz_class b = broot - 1; b <= broot + 1; ++b) {
            if (b < 1)
                continue;
            mpz_class cube = F.d() * b * b * b;
            for (int sign : {1, -1}) {
                if (cube + sign * 3 * b != target)
                    continue;
                mpz_class a2 = F.d() * b * b + sign * 4, a;
                if (a2 < 0)
                    continue;
                if (!mpz_perfect_square_p(a2.get_mpz_t()))
                    continue;
                mpz_sqrt(a.get_mpz_t(), a2.get_mpz_t());
                if ((a - b) % 2 != 0)
                    continue;
                // (a + b sqrt d)/2 = (a-b)/2 + b*omega
                Elem eps((a - b) / 2, b, 1);
                if (abs(F.norm_z(eps)) == 1)
                    return eps;
            }
        }
        // No cube root: x + y sqrt(d) = (x - y) + 2y*omega ... only if
        // x, y give an element of Z[omega], which they always do.
        return Elem(x - y, 2 * y, 1);
    }
    return Elem(x, y, 1);
}

std::vector<Elem> torsion_units(FieldDesc const & F)
{
    Elem one(1, 0), minus(-1, 0);
    if (F.d() == -1) {
        Elem i(0, 1);
        return {one, i, minus, Elem(0, -1)};
    }
    if (F.d() == -3) {
        // omega = (1+sqrt(-3))/2 is a primitive sixth root of unity
        Elem z(0, 1);
        std::vector<Elem> r = {one};
        Elem cur = z;
        for (int j = 1; j < 6; ++j) {
            r.push_back(cur);
            cur = F.mul(cur, z);
        }
        return r;
    }
    return {one, minus};
}

UnitGroup unit_group(FieldDesc const & F)
{
    UnitGroup g;
    g.torsion = torsion_units(F);
    g.torsion_order = static_cast<long>(g.torsion.size());
    if (F.real())
        g.fundamental = fundamental_unit(F);
    return g;
}

std::vector<Elem> unit_generators(FieldDesc const & F)
{
    std::vector<Elem> gens;
    if (F.d() == -1)
        gens.push_back(Elem(0, 1));
    else if (F.d() == -3)
        gens.push_back(Elem(0, 1));
    else
        gens.push_back(Elem(-1, 0));
    if (F.real())
        gens.push_back(fundamental_unit(F));
    return gens;
}

bool is_unit(FieldDesc const & F, Elem const & x)
{
    return x.den == 1 && abs(F.norm_z(x)) == 1;
}

std::optional<std::pair<long, long>> unit_decompose(FieldDesc const & F,
                                                    Elem const & u)
{
    if (!is_unit(F, u))
        return std::nullopt;
    if (F.imaginary()) {
        auto tor = torsion_units(F);
        for (size_t j = 0; j < tor.size(); ++j)
            if (tor[j] == u)
                return std::make_pair(static_cast<long>(j), 0L);
        return std::nullopt;   // unreachable for genuine units
    }
    Elem eps = fundamental_unit(F);
    Elem eps_inv = F.inverse(eps);
    long j = 0, k = 0;
    Elem x = u;
    if (F.embedding_sign(x) < 0) {
        x = F.neg(x);
        j = 1;
    }
    Elem one = F.one();
    while (x != one) {
        if (F.embedding_cmp(x, one) > 0) {
            x = F.mul(x, eps_inv);
            ++k;
        } else {
            x = F.mul(x, eps);
            --k;
        }
        if (std::labs(k) > 100000)
            return std::nullopt;
    }
    return std::make_pair(j, k);
}

}  // namespace euclid
