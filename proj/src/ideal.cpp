#include "euclid/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace euclid {

namespace {

mpz_class exact_div(mpz_class const & n, mpz_class const & d)
{
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    assert(r == 0);
    return q;
}

mpz_class mod_floor(mpz_class const & n, mpz_class const & m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

/* Column HNF of a rank-2 module given by columns (x_i, y_i) in the
 * (1, omega) coordinates: returns (e, f, g) with basis (e, 0), (f, g),
 * e, g > 0, 0 <= f < e.
 */
void hnf_columns(std::vector<std::pair<mpz_class, mpz_class>> cols,
                 mpz_class & e, mpz_class & f, mpz_class & g)
{
    // Reduce the omega row to a single nonzero entry by gcd steps.
    mpz_class cx = 0, cy = 0;   // running combination with cy = gcd so far
    std::vector<mpz_class> firsts;
    for (auto & [x, y] : cols) {
        if (y == 0) {
            if (x != 0)
                firsts.push_back(x);
            continue;
        }
        if (cy == 0) {
            cx = x;
            cy = y;
            continue;
        }
        mpz_class gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                   cy.get_mpz_t(), y.get_mpz_t());
        mpz_class nx = s * cx + t * x;
        // columns minus multiples of the new pivot
        mpz_class k1 = cy / gg, k2 = y / gg;
        firsts.push_back(cx * k2 - x * k1);
        cx = nx;
        cy = gg;
    }
    if (cy == 0)
        throw std::invalid_argument("module has rank < 2");
    if (cy < 0) {
        cy = -cy;
        cx = -cx;
    }
    e = 0;
    for (auto & x : firsts)
        mpz_gcd(e.get_mpz_t(), e.get_mpz_t(), x.get_mpz_t());
    if (e == 0)
        throw std::invalid_argument("module has rank < 2");
    g = cy;
    f = mod_floor(cx, e);
}

IntegralIdeal ideal_from_hnf(mpz_class const & e, mpz_class const & f,
                             mpz_class const & g)
{
    IntegralIdeal I;
    I.c = g;
    I.a = exact_div(e, g);
    I.b = mod_floor(exact_div(f, g), I.a);
    return I;
}

/* Tonelli-Shanks square root mod an odd prime; a must be a residue. */
mpz_class sqrt_mod(mpz_class const & a0, mpz_class const & p)
{
    mpz_class a = mod_floor(a0, p);
    if (a == 0)
        return 0;
    if (mod_floor(p, 4) == 3) {
        mpz_class e = (p + 1) / 4, r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    mpz_class m(s), c, t, r, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        mpz_class tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            mpz_powm_ui(tt.get_mpz_t(), tt.get_mpz_t(), 2, p.get_mpz_t());
            ++i;
        }
        mpz_class b = c;
        for (unsigned long j = 0; j + i + 1 < mpz_get_ui(m.get_mpz_t()); ++j)
            mpz_powm_ui(b.get_mpz_t(), b.get_mpz_t(), 2, p.get_mpz_t());
        m = i;
        c = mod_floor(b * b, p);
        t = mod_floor(t * c, p);
        r = mod_floor(r * b, p);
    }
    return r;
}

}  // namespace

std::string IntegralIdeal::str() const
{
    std::ostringstream os;
    os << "[" << a << "," << b << "," << c << "]";
    return os.str();
}

FractionalIdeal::FractionalIdeal(IntegralIdeal n, mpz_class d)
    : num(std::move(n)), den(std::move(d))
{
    if (den <= 0)
        throw std::invalid_argument("nonpositive ideal denominator");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.c.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        num.c /= g;
        den /= g;
    }
}

mpq_class FractionalIdeal::norm() const
{
    mpq_class q(num.norm(), den * den);
    q.canonicalize();
    return q;
}

std::string FractionalIdeal::str() const
{
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.get_str();
}

IntegralIdeal ideal_from_generators(FieldDesc const & F,
                                    std::vector<Elem> const & gens)
{
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    for (auto const & x : gens) {
        if (x.den != 1)
            throw std::invalid_argument("ideal generator must be integral");
        cols.emplace_back(x.a, x.b);
        Elem wx = F.mul(x, F.omega());
        cols.emplace_back(wx.a, wx.b);
    }
    mpz_class e, f, g;
    hnf_columns(std::move(cols), e, f, g);
    return ideal_from_hnf(e, f, g);
}

IntegralIdeal principal_ideal(FieldDesc const & F, Elem const & g)
{
    if (g.is_zero())
        throw std::invalid_argument("zero ideal");
    return ideal_from_generators(F, {g});
}

IntegralIdeal conj_ideal(FieldDesc const & F, IntegralIdeal const & I)
{
    // conj(b + omega) = (b + t) - omega
    IntegralIdeal J;
    J.a = I.a;
    J.c = I.c;
    J.b = mod_floor(-(I.b + F.trace_omega()), I.a);
    return J;
}

namespace {

/* (A + B*omega)/D in the lattice D'=(scale) * [ac, 0; cb, c]? No:
 * membership of (A,B)/D in c(aZ + (b+omega)Z): cD | B and acD | A - bB. */
bool in_scaled(IntegralIdeal const & I, mpz_class const & A,
               mpz_class const & B, mpz_class const & D)
{
    if (mod_floor(B, I.c * D) != 0)
        return false;
    return mod_floor(A - I.b * B, I.a * I.c * D) == 0;
}

}  // namespace

bool contains(FieldDesc const &, IntegralIdeal const & I, Elem const & x)
{
    if (x.den != 1)
        return false;
    return in_scaled(I, x.a, x.b, 1);
}

bool contains(FieldDesc const &, FractionalIdeal const & I, Elem const & x)
{
    return in_scaled(I.num, x.a * I.den, x.b * I.den, x.den);
}

IntegralIdeal mul(FieldDesc const & F, IntegralIdeal const & I,
                  IntegralIdeal const & J)
{
    Elem i1(I.a * I.c, 0), i2(I.b * I.c, I.c);
    Elem j1(J.a * J.c, 0), j2(J.b * J.c, J.c);
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    for (auto const & u : {i1, i2})
        for (auto const & v : {j1, j2}) {
            Elem w = F.mul(u, v);
            cols.emplace_back(w.a, w.b);
        }
    mpz_class e, f, g;
    hnf_columns(std::move(cols), e, f, g);
    return ideal_from_hnf(e, f, g);
}

FractionalIdeal mul(FieldDesc const & F, FractionalIdeal const & I,
                    FractionalIdeal const & J)
{
    return FractionalIdeal(mul(F, I.num, J.num), I.den * J.den);
}

FractionalIdeal mul(FieldDesc const & F, Elem const & g,
                    FractionalIdeal const & I)
{
    Elem gi(g.a, g.b, 1);   // numerator part
    Elem i1(I.num.a * I.num.c, 0), i2(I.num.b * I.num.c, I.num.c);
    Elem w1 = F.mul(gi, i1), w2 = F.mul(gi, i2);
    std::vector<std::pair<mpz_class, mpz_class>> cols = {
        {w1.a, w1.b}, {w2.a, w2.b}};
    mpz_class e, f, gg;
    hnf_columns(std::move(cols), e, f, gg);
    return FractionalIdeal(ideal_from_hnf(e, f, gg), I.den * g.den);
}

FractionalIdeal inverse(FieldDesc const & F, FractionalIdeal const & I)
{
    IntegralIdeal cj = conj_ideal(F, I.num);
    cj.c *= I.den;
    return FractionalIdeal(std::move(cj), I.num.norm());
}

FractionalIdeal principal_fractional(FieldDesc const & F, Elem const & g)
{
    Elem gi(g.a, g.b, 1);
    return FractionalIdeal(principal_ideal(F, gi), g.den);
}

FractionalIdeal ideal_sum(FieldDesc const & F, FractionalIdeal const & I,
                          FractionalIdeal const & J)
{
    std::vector<std::pair<mpz_class, mpz_class>> cols = {
        {I.num.a * I.num.c * J.den, 0},
        {I.num.b * I.num.c * J.den, I.num.c * J.den},
        {J.num.a * J.num.c * I.den, 0},
        {J.num.b * J.num.c * I.den, J.num.c * I.den}};
    mpz_class e, f, g;
    hnf_columns(std::move(cols), e, f, g);
    (void)F;
    return FractionalIdeal(ideal_from_hnf(e, f, g), I.den * J.den);
}

FractionalIdeal pow(FieldDesc const & F, FractionalIdeal const & I, long e)
{
    FractionalIdeal base = e < 0 ? inverse(F, I) : I;
    long n = std::labs(e);
    FractionalIdeal r{IntegralIdeal{}, 1};
    for (long i = 0; i < n; ++i)
        r = mul(F, r, base);
    return r;
}

std::vector<std::pair<PrimeIdeal, int>> factor_prime(mpz_class const & p,
                                                     FieldDesc const & F)
{
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw std::invalid_argument("factor_prime: p is not prime");
    long t = F.trace_omega(), n0 = F.norm_omega();
    auto degree1 = [&](mpz_class b, SplitType st) {
        PrimeIdeal P;
        P.p = p;
        P.residue_degree = 1;
        P.split_type = st;
        P.hnf = IntegralIdeal{p, mod_floor(b, p), 1};
        return P;
    };

    std::vector<std::pair<PrimeIdeal, int>> out;
    if (p == 2) {
        // roots of b^2 + t b + n0 mod 2, by inspection
        std::vector<mpz_class> roots;
        for (long b = 0; b < 2; ++b)
            if ((b * b + t * b + n0) % 2 == 0)
                roots.push_back(b);
        if (roots.empty()) {
            PrimeIdeal P;
            P.p = p;
            P.residue_degree = 2;
            P.split_type = SplitType::inert;
            P.hnf = IntegralIdeal{1, 0, p};
            out.emplace_back(P, 1);
        } else if (roots.size() == 2) {
            // two roots mod 2 only for d = 1 (mod 8), where 2 splits
            out.emplace_back(degree1(roots[0], SplitType::split), 1);
            out.emplace_back(degree1(roots[1], SplitType::split), 1);
        } else {
            out.emplace_back(degree1(roots[0], SplitType::ramified), 2);
        }
    } else {
        mpz_class disc(F.disc());
        int leg = mpz_legendre(disc.get_mpz_t(), p.get_mpz_t());
        if (mod_floor(disc, p) == 0)
            leg = 0;
        if (leg == -1) {
            PrimeIdeal P;
            P.p = p;
            P.residue_degree = 2;
            P.split_type = SplitType::inert;
            P.hnf = IntegralIdeal{1, 0, p};
            out.emplace_back(P, 1);
        } else {
            // b = (-t +- sqrt(disc)) / 2 mod p
            mpz_class inv2, two = 2;
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            if (leg == 0) {
                mpz_class b = mod_floor(mpz_class(-t) * inv2, p);
                out.emplace_back(degree1(b, SplitType::ramified), 2);
            } else {
                mpz_class s = sqrt_mod(disc, p);
                mpz_class b1 = mod_floor((s - t) * inv2, p);
                mpz_class b2 = mod_floor((-s - t) * inv2, p);
                out.emplace_back(degree1(b1, SplitType::split), 1);
                out.emplace_back(degree1(b2, SplitType::split), 1);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](auto const & x, auto const & y) { return x.first < y.first; });
    for (auto const & [P, m] : out) {
        (void)m;
        Elem bw(P.hnf.b, 1, 1);
        assert(P.residue_degree == 2 ||
               mod_floor(F.norm_z(bw), p) == 0);
    }
    return out;
}

namespace {

bool prime_divides(FieldDesc const & F, PrimeIdeal const & P,
                   IntegralIdeal const & I)
{
    Elem g1(I.a * I.c, 0), g2(I.b * I.c, I.c);
    return contains(F, P.hnf, g1) && contains(F, P.hnf, g2);
}

IntegralIdeal divide_by_prime(FieldDesc const & F, IntegralIdeal const & I,
                              PrimeIdeal const & P)
{
    if (P.residue_degree == 2) {
        IntegralIdeal J = I;
        J.c = exact_div(J.c, P.p);
        return J;
    }
    IntegralIdeal prod = mul(F, I, conj_ideal(F, P.hnf));
    prod.c = exact_div(prod.c, P.p);
    return prod;
}

}  // namespace

long valuation(FieldDesc const & F, FractionalIdeal const & I,
               PrimeIdeal const & P)
{
    long v = 0;
    IntegralIdeal cur = I.num;
    while (prime_divides(F, P, cur)) {
        cur = divide_by_prime(F, cur, P);
        ++v;
    }
    long e_of_p = P.split_type == SplitType::ramified ? 2 : 1;
    mpz_class den = I.den;
    while (mod_floor(den, P.p) == 0) {
        den = exact_div(den, P.p);
        v -= e_of_p;
    }
    return v;
}

namespace {

/* All x = u + v*omega with |Nm(x)| == N, x in I, up to sign (v >= 0);
 * stops after the first hit when `first_only`. */
std::vector<Elem> norm_form_solutions(FieldDesc const & F,
                                      IntegralIdeal const & I,
                                      mpz_class const & N, bool first_only)
{
    std::vector<Elem> found;
    long t = F.trace_omega();
    auto try_uv = [&](mpz_class const & s2, mpz_class const & v) {
        if (s2 < 0)
            return;
        if (!mpz_perfect_square_p(s2.get_mpz_t()))
            return;
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
        for (int sgn_s : {1, -1}) {
            if (s == 0 && sgn_s < 0)
                continue;
            mpz_class num = -t * v + sgn_s * s;
            if (mod_floor(num, 2) != 0)
                continue;
            Elem x(num / 2, v, 1);
            if (x.is_zero())
                continue;
            if (contains(F, I, x))
                found.push_back(x);
        }
    };

    if (F.imaginary()) {
        // 4*Nm = (2u + tv)^2 + |disc| v^2
        mpz_class vmax2 = 4 * N / mpz_class(-F.disc());
        mpz_class vmax;
        mpz_sqrt(vmax.get_mpz_t(), vmax2.get_mpz_t());
        for (mpz_class v = 0; v <= vmax; ++v) {
            mpz_class s2 = 4 * N + F.disc() * v * v;
            try_uv(s2, v);
            if (first_only && !found.empty())
                return found;
        }
        return found;
    }

    // Real: a generator, if any, has a unit multiple with
    // sqrt(N) <= |x_1| < sqrt(N)*eps_1, hence |x_2| <= sqrt(N) and
    // |v| <= sqrt(N)*(eps_1 + 1)/sqrt(disc).
    Elem eps = fundamental_unit(F);
    mpz_class sd;
    mpz_class D(F.d());
    mpz_sqrt(sd.get_mpz_t(), D.get_mpz_t());
    mpz_class w1up = F.trace_omega() == 1 ? mpz_class((sd + 3) / 2)
                                          : mpz_class(sd + 1);
    mpz_class e1up = eps.a + eps.b * w1up;   // eps coords are nonnegative
    mpz_class box = N * (e1up + 1) * (e1up + 1);
    mpz_class vmax;
    mpz_sqrt(vmax.get_mpz_t(), mpz_class(box / F.disc()).get_mpz_t());
    vmax += 2;
    for (mpz_class v = 0; v <= vmax; ++v) {
        mpz_class dv2 = F.disc() * v * v;
        try_uv(dv2 + 4 * N, v);   // Nm = +N
        try_uv(dv2 - 4 * N, v);   // Nm = -N
        if (first_only && !found.empty())
            return found;
    }
    return found;
}

}  // namespace

std::optional<Elem> is_principal(FieldDesc const & F, IntegralIdeal const & I)
{
    if (I.is_one())
        return F.one();
    mpz_class N = I.norm();
    auto sols = norm_form_solutions(F, I, N, true);
    if (sols.empty())
        return std::nullopt;
    // x in I with |Nm(x)| = Nm(I) forces (x) = I
    return sols.front();
}

std::optional<Elem> is_principal(FieldDesc const & F,
                                 FractionalIdeal const & I)
{
    auto g = is_principal(F, I.num);
    if (!g)
        return std::nullopt;
    return F.div_int(*g, I.den);
}

Elem canonical_unit_normalize(FieldDesc const & F, Elem const & g)
{
    if (g.is_zero())
        throw std::invalid_argument("cannot normalize zero");
    if (F.imaginary()) {
        Elem best = g;
        for (auto const & u : torsion_units(F)) {
            Elem cand = F.mul(g, u);
            if (F.arg_cmp(cand, best) < 0)
                best = cand;
        }
        return best;
    }
    Elem eps = fundamental_unit(F);
    Elem eps_inv = F.inverse(eps);
    mpq_class N = abs(F.norm(g));
    Elem n_elem(N.get_num(), 0, N.get_den());
    Elem upper = F.mul(n_elem, F.mul(eps, eps));   // N * eps_1^2 as element
    Elem x = g;
    // window: N <= x_1^2 < N * eps_1^2, then positive sign
    while (true) {
        Elem sq = F.mul(x, x);
        if (F.embedding_cmp(sq, n_elem) < 0)
            x = F.mul(x, eps);
        else if (F.embedding_cmp(sq, upper) >= 0)
            x = F.mul(x, eps_inv);
        else
            break;
    }
    if (F.embedding_sign(x) < 0)
        x = F.neg(x);
    return x;
}

Elem canonical_generator(FieldDesc const & F, FractionalIdeal const & I)
{
    auto g = is_principal(F, I);
    if (!g)
        throw NotPrincipal("ideal " + I.str() + " is not principal");
    return canonical_unit_normalize(F, *g);
}

ClassGroup ClassGroup::compute(FieldDesc const & F)
{
    ClassGroup G(F);
    mpz_class ad(std::labs(F.disc()));
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), ad.get_mpz_t());
    bound += 1;   // generous cover of the Minkowski bound

    struct Cand
    {
        PrimeIdeal P;
        long order;
    };
    std::vector<Cand> cands;
    for (mpz_class p = 2; p <= bound; mpz_nextprime(p.get_mpz_t(),
                                                    p.get_mpz_t())) {
        if (p > bound)
            break;
        for (auto const & [P, m] : factor_prime(p, F)) {
            (void)m;
            if (P.residue_degree == 2)
                continue;   // inert primes are principal
            FractionalIdeal Pf(P.hnf);
            FractionalIdeal acc = Pf;
            long order = 0;
            for (long k = 1; k <= 10000; ++k) {
                if (is_principal(F, acc)) {
                    order = k;
                    break;
                }
                acc = mul(F, acc, Pf);
            }
            if (order == 0)
                throw NonCyclicClassGroup("class order search exhausted");
            cands.push_back({P, order});
        }
    }
    std::sort(cands.begin(), cands.end(), [](Cand const & x, Cand const & y) {
        if (x.order != y.order)
            return x.order > y.order;
        return x.P.norm() < y.P.norm();
    });

    auto in_span = [&](PrimeIdeal const & gen, long h, PrimeIdeal const & Q) {
        FractionalIdeal geninv = inverse(F, FractionalIdeal(gen.hnf));
        FractionalIdeal cur(Q.hnf);
        for (long k = 0; k < h; ++k) {
            if (is_principal(F, cur))
                return true;
            cur = mul(F, cur, geninv);
        }
        return false;
    };

    if (cands.empty() || cands.front().order == 1) {
        G.h_ = 1;
    } else {
        bool done = false;
        for (auto const & cand : cands) {
            if (cand.order < cands.front().order)
                break;   // a generator must have maximal order
            bool ok = true;
            for (auto const & other : cands)
                if (!in_span(cand.P, cand.order, other.P)) {
                    ok = false;
                    break;
                }
            if (ok) {
                G.h_ = cand.order;
                G.gen_ = cand.P;
                done = true;
                break;
            }
        }
        if (!done)
            throw NonCyclicClassGroup("class group of d=" +
                                      std::to_string(F.d()) +
                                      " is not generated by one prime class");
    }

    G.gen_powers_.assign(1, FractionalIdeal(IntegralIdeal{}));
    G.gen_inv_powers_.assign(1, FractionalIdeal(IntegralIdeal{}));
    if (G.gen_) {
        FractionalIdeal gf(G.gen_->hnf);
        FractionalIdeal gi = inverse(F, gf);
        for (long k = 1; k < G.h_; ++k) {
            G.gen_powers_.push_back(mul(F, G.gen_powers_.back(), gf));
            G.gen_inv_powers_.push_back(mul(F, G.gen_inv_powers_.back(), gi));
        }
    }
    return G;
}

FractionalIdeal ClassGroup::generator_power(long k) const
{
    long r = ((k % h_) + h_) % h_;
    return gen_powers_[static_cast<size_t>(r)];
}

IdealClass ClassGroup::ideal_class(FractionalIdeal const & I) const
{
    for (long k = 0; k + 1 < h_; ++k) {
        if (is_principal(F_, mul(F_, I, gen_inv_powers_[static_cast<size_t>(k)])))
            return IdealClass{k};
    }
    return IdealClass{h_ - 1};
}

IdealClass ClassGroup::ideal_class(IntegralIdeal const & I) const
{
    return ideal_class(FractionalIdeal(I));
}

ClassGroup class_group(FieldDesc const & F)
{
    return ClassGroup::compute(F);
}

std::vector<IntegralIdeal> ideals_up_to(FieldDesc const & F, long bound)
{
    std::vector<IntegralIdeal> out;
    long t = F.trace_omega(), n0 = F.norm_omega();
    for (long c = 1; c * c <= bound; ++c)
        for (long a = 1; a * c * c <= bound; ++a)
            for (long b = 0; b < a; ++b) {
                // need Nm(b + omega) = b^2 + t b + n0 divisible by a
                long nm = b * b + t * b + n0;
                if (((nm % a) + a) % a == 0)
                    out.push_back(IntegralIdeal{a, b, c});
            }
    std::sort(out.begin(), out.end());
    return out;
}

Lattice2 lattice_of(FractionalIdeal const & I)
{
    return Lattice2{I.num.a * I.num.c, I.num.b * I.num.c, I.num.c, I.den};
}

bool lattice_contains(Lattice2 const & L, Elem const & x)
{
    // x = s*(e,0)/den + t*(f,g)/den with integer s, t
    mpz_class A = x.a * L.den, B = x.b * L.den, D = x.den;
    if (mod_floor(B, L.g * D) != 0)
        return false;
    mpz_class t = B / (L.g * D);
    return mod_floor(A - t * D * L.f, L.e * D) == 0;
}

namespace {

/* Integer coordinates of x in the basis of L; throws if not in L. */
std::pair<mpz_class, mpz_class> lattice_coords(Lattice2 const & L,
                                               Elem const & x)
{
    // x = (s*(e,0) + t*(f,g)) / L.den, with x = (a,b)/x.den
    mpz_class A = x.a * L.den, B = x.b * L.den;   // over denominator x.den
    mpz_class t = exact_div(B, L.g * x.den);
    mpz_class s = exact_div(A - t * x.den * L.f, L.e * x.den);
    return {s, t};
}

struct SubHnf
{
    mpz_class A, B, D;   // sublattice columns (A,0) and (B,D) in L-coords
};

SubHnf sub_hnf(Lattice2 const & L, Lattice2 const & S)
{
    Elem w1(S.e, 0, S.den), w2(S.f, S.g, S.den);
    auto [x1, y1] = lattice_coords(L, w1);
    auto [x2, y2] = lattice_coords(L, w2);
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), y1.get_mpz_t(),
               y2.get_mpz_t());
    if (g == 0)
        throw std::invalid_argument("sublattice has rank < 2");
    mpz_class B = s * x1 + t * x2;
    mpz_class A = x1 * (y2 / g) - x2 * (y1 / g);
    if (A < 0)
        A = -A;
    if (g < 0) {
        g = -g;
        B = -B;
    }
    B = mod_floor(B, A);
    return SubHnf{A, B, g};
}

}  // namespace

std::vector<Elem> lattice_quotient_reps(Lattice2 const & L, Lattice2 const & S)
{
    SubHnf H = sub_hnf(L, S);
    std::vector<Elem> reps;
    for (mpz_class i = 0; i < H.A; ++i)
        for (mpz_class j = 0; j < H.D; ++j)
            reps.push_back(Elem(i * L.e + j * L.f, j * L.g, L.den));
    return reps;
}

std::pair<mpz_class, mpz_class> lattice_coset_id(Lattice2 const & L,
                                                 Lattice2 const & S,
                                                 Elem const & x)
{
    SubHnf H = sub_hnf(L, S);
    auto [cx, cy] = lattice_coords(L, x);
    mpz_class j = mod_floor(cy, H.D);
    mpz_class k = (cy - j) / H.D;
    mpz_class i = mod_floor(cx - k * H.B, H.A);
    return {i, j};
}

}  // namespace euclid
