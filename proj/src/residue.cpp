#include "euclid/residue.hpp"

#include <algorithm>

namespace euclid {

namespace {

mpz_class mod_floor(mpz_class const & n, mpz_class const & m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

void merge_factors(std::vector<std::pair<mpz_class, int>> & into,
                   std::vector<std::pair<mpz_class, int>> more)
{
    for (auto & [q, e] : more) {
        auto it = std::find_if(into.begin(), into.end(),
                               [&](auto const & f) { return f.first == q; });
        if (it == into.end())
            into.emplace_back(std::move(q), e);
        else
            it->second += e;
    }
    std::sort(into.begin(), into.end());
}

}  // namespace

std::vector<std::pair<mpz_class, int>> trial_factor(mpz_class n)
{
    if (n < 1)
        throw std::invalid_argument("trial_factor needs n >= 1");
    std::vector<std::pair<mpz_class, int>> out;
    auto strip = [&](mpz_class const & q) {
        int e = 0;
        while (mod_floor(n, q) == 0) {
            n /= q;
            ++e;
        }
        if (e)
            out.emplace_back(q, e);
    };
    strip(2);
    strip(3);
    for (mpz_class q = 5; q * q <= n; q += 6) {
        strip(q);
        strip(q + 2);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

ResidueField::ResidueField(FieldDesc const & F, PrimeIdeal const & P)
    : p_(P.p), deg_(P.residue_degree), t_(F.trace_omega()),
      n0_(F.norm_omega())
{
    if (deg_ == 1) {
        // p = pZ + (b + omega)Z, so omega = -b in O_K/p
        omega_ = mod_floor(-P.hnf.b, p_);
        order_ = p_;
        uorder_ = p_ - 1;
        uorder_factors_ = trial_factor(uorder_);
    } else {
        order_ = p_ * p_;
        uorder_ = order_ - 1;
        uorder_factors_ = trial_factor(p_ - 1);
        merge_factors(uorder_factors_, trial_factor(p_ + 1));
    }
}

mpz_class ResidueField::reduce(Elem const & x) const
{
    mpz_class dinv;
    if (!mpz_invert(dinv.get_mpz_t(), x.den.get_mpz_t(), p_.get_mpz_t()))
        throw std::invalid_argument("denominator not invertible mod p");
    if (deg_ == 1)
        return mod_floor((x.a + x.b * omega_) * dinv, p_);
    mpz_class i = mod_floor(x.a * dinv, p_);
    mpz_class j = mod_floor(x.b * dinv, p_);
    return i + j * p_;
}

mpz_class ResidueField::add(mpz_class const & x, mpz_class const & y) const
{
    if (deg_ == 1)
        return mod_floor(x + y, p_);
    return mod_floor(x % p_ + y % p_, p_) +
           mod_floor(x / p_ + y / p_, p_) * p_;
}

mpz_class ResidueField::neg(mpz_class const & x) const
{
    if (deg_ == 1)
        return mod_floor(-x, p_);
    return mod_floor(-(x % p_), p_) + mod_floor(-(x / p_), p_) * p_;
}

mpz_class ResidueField::mul(mpz_class const & x, mpz_class const & y) const
{
    if (deg_ == 1)
        return mod_floor(x * y, p_);
    mpz_class xi = x % p_, xj = x / p_, yi = y % p_, yj = y / p_;
    // (xi + xj w)(yi + yj w) with w^2 = t w - n0
    mpz_class jj = xj * yj;
    mpz_class i = mod_floor(xi * yi - n0_ * jj, p_);
    mpz_class j = mod_floor(xi * yj + xj * yi + t_ * jj, p_);
    return i + j * p_;
}

mpz_class ResidueField::pow(mpz_class const & x, mpz_class e) const
{
    if (e < 0)
        return pow(inv(x), -e);
    if (deg_ == 1) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
        return r;
    }
    mpz_class r = one(), base = x;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = mul(r, base);
        base = mul(base, base);
        e /= 2;
    }
    return r;
}

mpz_class ResidueField::inv(mpz_class const & x) const
{
    if (x == 0)
        throw std::invalid_argument("inverse of zero residue");
    return pow(x, uorder_ - 1);
}

mpz_class ResidueField::element_order(mpz_class const & x) const
{
    if (x == 0)
        throw std::invalid_argument("order of zero residue");
    mpz_class ord = uorder_;
    for (auto const & [q, e] : uorder_factors_)
        for (int i = 0; i < e; ++i) {
            mpz_class cand = ord / q;
            if (pow(x, cand) == one())
                ord = cand;
            else
                break;
        }
    return ord;
}

mpz_class ResidueField::subgroup_order(
    std::vector<mpz_class> const & gens) const
{
    mpz_class l = 1;
    for (auto const & g : gens)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), element_order(g).get_mpz_t());
    return l;
}

}  // namespace euclid
