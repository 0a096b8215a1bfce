#include "euclid/sieve.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace euclid {

namespace {

std::string q_str(mpq_class const & q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/* Images of the unit-group generators in O_K/p. */
std::vector<mpz_class> unit_gen_residues(FieldDesc const & F,
                                         ResidueField const & R)
{
    std::vector<mpz_class> out;
    for (auto const & u : unit_generators(F))
        out.push_back(R.reduce(u));
    return out;
}

/* Multiplicative closure of the given nonzero residues, with 1. */
std::set<mpz_class> monoid_closure(ResidueField const & R,
                                   std::vector<mpz_class> const & gens)
{
    std::set<mpz_class> seen{R.one()};
    std::vector<mpz_class> frontier{R.one()};
    while (!frontier.empty()) {
        std::vector<mpz_class> next;
        for (auto const & x : frontier)
            for (auto const & g : gens) {
                mpz_class y = R.mul(x, g);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

std::vector<mpz_class> reduce_all(ResidueField const & R,
                                  std::vector<Elem> const & xs)
{
    std::vector<mpz_class> out;
    out.reserve(xs.size());
    for (auto const & x : xs)
        out.push_back(R.reduce(x));
    return out;
}

void require_coprime(FieldDesc const & F, IntegralIdeal const & C,
                     PrimeIdeal const & p)
{
    if (valuation(F, FractionalIdeal(C), p) != 0)
        throw std::invalid_argument("sieve prime divides C");
}

mpz_class count_matches(std::vector<mpz_class> const & residues,
                        mpz_class const & alpha)
{
    return std::count(residues.begin(), residues.end(), alpha);
}

/* Z(beta, p, C) from pre-reduced script_A residues. */
mpz_class z_beta_reduced(GeneratorTable & T, SievePanel const & panel,
                         ResidueField const & R,
                         std::vector<mpz_class> const & reduced,
                         std::vector<mpz_class> const & units,
                         Elem const & beta, PrimeIdeal const & p)
{
    FieldDesc const & F = T.field();
    if (contains(F, T.C(), beta))
        return mpz_class(units.size()) * count_matches(reduced, R.zero());
    mpz_class base = R.reduce(F.mul(beta, T.x_of(p, panel.n)));
    mpz_class total = 0;
    for (auto const & u : units)
        total += count_matches(reduced, R.mul(u, base));
    return total;
}

/* Sum over beta in p^-1 C / C of (Z(beta)/f - |A|/Nm(p))^2. */
mpq_class coset_variance(GeneratorTable & T, SievePanel const & panel,
                         PrimeIdeal const & p, mpz_class * zero_cosets)
{
    FieldDesc const & F = T.field();
    require_coprime(F, T.C(), p);
    ResidueField R(F, p);
    auto reduced = reduce_all(R, panel.script_A);
    auto units = unit_image_residues(F, R);
    mpq_class mean(mpz_class(panel.A.size()), p.norm());
    mean.canonicalize();
    mpq_class f(mpz_class(units.size()));
    mpq_class sum = 0;
    mpz_class zeros = 0;
    for (auto const & beta : cosets(F, EIdeal{p.hnf}, T.C())) {
        mpz_class z =
            z_beta_reduced(T, panel, R, reduced, units, beta.value, p);
        if (z == 0)
            ++zeros;
        mpq_class diff = mpq_class(z) / f - mean;
        sum += diff * diff;
    }
    if (zero_cosets)
        *zero_cosets = zeros;
    return sum;
}

}  // namespace

UnitImage f_p(FieldDesc const & F, PrimeIdeal const & P)
{
    ResidueField R(F, P);
    mpz_class f = R.subgroup_order(unit_gen_residues(F, R));
    return UnitImage{P, f, f == R.unit_order()};
}

std::vector<mpz_class> unit_image_residues(FieldDesc const & F,
                                           ResidueField const & R)
{
    auto closure = monoid_closure(R, unit_gen_residues(F, R));
    return {closure.begin(), closure.end()};
}

mpz_class f_monoid(FieldDesc const & F, PrimeIdeal const & P,
                   std::vector<Elem> const & gens)
{
    ResidueField R(F, P);
    std::vector<mpz_class> res;
    for (auto const & g : gens) {
        mpz_class r = R.reduce(g);
        if (r == 0)
            throw std::invalid_argument("monoid generator lies in p");
        res.push_back(r);
    }
    return mpz_class(monoid_closure(R, res).size());
}

bool multiplicatively_independent(FieldDesc const & F,
                                  std::vector<Elem> const & xs)
{
    for (auto const & x : xs)
        if (x.is_zero())
            throw std::invalid_argument("zero element");
    if (xs.empty())
        return true;

    // Prime ideals that can carry a valuation of some x.
    std::set<mpz_class> rational;
    for (auto const & x : xs) {
        mpq_class nm = F.norm(x);
        for (auto const & [q, e] : trial_factor(abs(nm.get_num())))
            rational.insert(q);
        for (auto const & [q, e] : trial_factor(nm.get_den()))
            rational.insert(q);
    }
    std::vector<PrimeIdeal> primes;
    for (auto const & q : rational)
        for (auto const & [P, e] : factor_prime(q, F))
            primes.push_back(P);

    // Exponent tuples killing all valuations: kernel of the transpose of
    // the valuation matrix, eliminated over the rationals.
    size_t const t = xs.size(), m = primes.size();
    std::vector<std::vector<mpq_class>> mt(m, std::vector<mpq_class>(t, 0));
    for (size_t i = 0; i < t; ++i) {
        FractionalIdeal fx = principal_fractional(F, xs[i]);
        for (size_t j = 0; j < m; ++j)
            mt[j][i] = valuation(F, fx, primes[j]);
    }
    std::vector<long> pivcol(m, -1);
    size_t r2 = 0;
    for (size_t col = 0; col < t && r2 < m; ++col) {
        size_t piv = r2;
        while (piv < m && mt[piv][col] == 0)
            ++piv;
        if (piv == m)
            continue;
        std::swap(mt[piv], mt[r2]);
        mpq_class lead = mt[r2][col];
        for (size_t j = 0; j < t; ++j)
            mt[r2][j] /= lead;
        for (size_t i = 0; i < m; ++i) {
            if (i == r2 || mt[i][col] == 0)
                continue;
            mpq_class factor = mt[i][col];
            for (size_t j = 0; j < t; ++j)
                mt[i][j] -= factor * mt[r2][j];
        }
        pivcol[r2] = long(col);
        ++r2;
    }
    size_t const nullity = t - r2;
    if (nullity == 0)
        return true;
    if (F.imaginary() || nullity >= 2)
        return false;

    // A single relation direction remains: build an integer kernel vector
    // and test whether its product escapes torsion through the epsilon
    // exponent.  Free column gives the kernel vector.
    std::vector<bool> is_pivot(t, false);
    for (size_t i = 0; i < r2; ++i)
        is_pivot[size_t(pivcol[i])] = true;
    size_t free_col = 0;
    while (free_col < t && is_pivot[free_col])
        ++free_col;
    std::vector<mpq_class> e(t, 0);
    e[free_col] = 1;
    for (size_t i = 0; i < r2; ++i)
        e[size_t(pivcol[i])] = -mt[i][free_col];
    mpz_class lcm = 1;
    for (auto const & q : e)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    Elem prod = F.one();
    for (size_t i = 0; i < t; ++i) {
        mpz_class ei = mpq_class(e[i] * lcm).get_num();
        Elem powed =
            F.pow(xs[i], mpz_class(abs(ei)).get_ui());
        if (ei < 0)
            powed = F.inverse(powed);
        prod = F.mul(prod, powed);
    }
    auto dec = unit_decompose(F, prod);
    if (!dec)
        throw std::logic_error("kernel product is not a unit");
    return dec->second != 0;
}

std::vector<GuptaMurtyRow> gupta_murty_scan(FieldDesc const & F, long X,
                                            std::vector<long> const & y_grid)
{
    if (!F.real())
        throw std::invalid_argument("gupta_murty_scan needs a real field");
    std::vector<mpz_class> fs;
    mpz_class p = 1;
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > X)
            break;
        for (auto const & [P, e] : factor_prime(p, F))
            if (P.norm() <= X)
                fs.push_back(f_p(F, P).f);
    }
    std::vector<GuptaMurtyRow> table;
    for (long y : y_grid) {
        long cnt = 0;
        for (auto const & f : fs)
            if (f <= y)
                ++cnt;
        table.push_back({y, cnt, y * y});
    }
    return table;
}

SievePanel make_panel(GeneratorTable & T, long n, long X, long Q)
{
    FieldDesc const & F = T.field();
    ClassGroup const & G = T.group();
    FractionalIdeal Cf{T.C()};
    IdealClass a_class = G.ideal_class(pow(F, Cf, -n));
    IdealClass p_class = G.ideal_class(pow(F, Cf, 1 - n));

    SievePanel panel;
    panel.n = n;
    panel.X = 0;
    panel.Q = 0;
    for (auto const & inv : ideals_up_to(F, X)) {
        if (!(G.ideal_class(inv) == a_class))
            continue;
        EIdeal I{inv};
        panel.script_A.push_back(T.x_of(I, n));
        panel.A.push_back(std::move(I));
        panel.X = std::max(panel.X, inv.norm());
    }
    mpz_class p = 1;
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > Q)
            break;
        for (auto const & [P, e] : factor_prime(p, F)) {
            if (P.norm() > Q)
                continue;
            if (valuation(F, Cf, P) != 0)
                continue;
            if (!(G.ideal_class(P.hnf) == p_class))
                continue;
            panel.P.push_back(P);
            panel.Q = std::max(panel.Q, P.norm());
        }
    }
    return panel;
}

long z_alpha(ResidueField const & R, std::vector<Elem> const & script_A,
             mpz_class const & alpha_residue)
{
    long cnt = 0;
    for (auto const & x : script_A)
        if (R.reduce(x) == alpha_residue)
            ++cnt;
    return cnt;
}

mpz_class z_beta(GeneratorTable & T, SievePanel const & panel,
                 Elem const & beta, PrimeIdeal const & p)
{
    FieldDesc const & F = T.field();
    require_coprime(F, T.C(), p);
    ResidueField R(F, p);
    auto reduced = reduce_all(R, panel.script_A);
    auto units = unit_image_residues(F, R);
    return z_beta_reduced(T, panel, R, reduced, units, beta, p);
}

mpz_class z_beta_bruteforce(GeneratorTable & T, SievePanel const & panel,
                            Elem const & beta, PrimeIdeal const & p, long H)
{
    FieldDesc const & F = T.field();
    require_coprime(F, T.C(), p);
    T.x_of(p, panel.n);   // class precondition check
    FractionalIdeal pC = mul(F, inverse(F, FractionalIdeal(p.hnf)),
                             FractionalIdeal(T.C()));
    bool const in_C = contains(F, T.C(), beta);
    auto torsion = torsion_units(F);
    mpz_class hits = 0;
    for (auto const & I : panel.A) {
        // (beta + y)^-1 p^-1 C = I  <=>  beta + y generates p^-1 C inv.
        // Every generator is a unit multiple of one fixed generator, so
        // sweep zeta^i eps^j up to exponent H and ask whether the result
        // lands in beta's coset of C.
        FractionalIdeal target = mul(F, pC, FractionalIdeal(I.inv));
        auto g0 = is_principal(F, target);
        if (!g0)
            continue;
        std::vector<Elem> gens;
        for (auto const & z : torsion)
            gens.push_back(F.mul(z, *g0));
        if (F.real()) {
            Elem eps = fundamental_unit(F);
            Elem up = F.one(), down = F.one();
            size_t base = gens.size();
            for (long j = 1; j <= H; ++j) {
                up = F.mul(up, eps);
                down = F.div(down, eps);
                for (size_t i = 0; i < base; ++i) {
                    gens.push_back(F.mul(gens[i], up));
                    gens.push_back(F.mul(gens[i], down));
                }
            }
        }
        bool found = false;
        for (auto const & z : gens) {
            Elem y = F.sub(z, beta);
            if (!contains(F, T.C(), y))
                continue;
            if (principal_fractional(F, F.add(beta, y)) != target)
                throw std::logic_error("witness fails the defining equation");
            found = true;
            break;
        }
        if (found)
            ++hits;
    }
    if (!in_C)
        return hits;
    ResidueField R(F, p);
    return hits * mpz_class(unit_image_residues(F, R).size());
}

mpz_class omega_p(GeneratorTable & T, SievePanel const & panel,
                  PrimeIdeal const & p)
{
    FieldDesc const & F = T.field();
    require_coprime(F, T.C(), p);
    ResidueField R(F, p);
    auto reduced = reduce_all(R, panel.script_A);
    auto units = unit_image_residues(F, R);
    mpz_class zeros = 0;
    for (auto const & beta : cosets(F, EIdeal{p.hnf}, T.C()))
        if (z_beta_reduced(T, panel, R, reduced, units, beta.value, p) == 0)
            ++zeros;
    return zeros;
}

std::string PanelReport::to_json() const
{
    nlohmann::ordered_json j;
    j["lhs"] = q_str(lhs);
    j["rhs_raw"] = q_str(rhs_raw);
    j["ratio"] = q_str(ratio);
    return j.dump(2) + "\n";
}

PanelReport sieve_heart_check(GeneratorTable & T, SievePanel const & panel,
                              PrimeIdeal const & p)
{
    FieldDesc const & F = T.field();
    mpq_class lhs = coset_variance(T, panel, p, nullptr);

    ResidueField R(F, p);
    auto reduced = reduce_all(R, panel.script_A);
    std::map<mpz_class, long> hist;
    for (auto const & r : reduced)
        ++hist[r];
    mpq_class mean(mpz_class(panel.A.size()), p.norm());
    mean.canonicalize();
    mpq_class rhs = 0;
    for (auto const & [r, cnt] : hist) {
        mpq_class diff = mpq_class(cnt) - mean;
        rhs += diff * diff;
    }
    rhs += (p.norm() - mpz_class(hist.size())) * mean * mean;

    if (lhs > rhs)
        throw std::logic_error("coset variance exceeds residue variance");
    PanelReport rep;
    rep.lhs = lhs;
    rep.rhs_raw = rhs;
    rep.ratio = rhs == 0 ? mpq_class(0) : mpq_class(lhs / rhs);
    return rep;
}

std::string LargeSieveReport::to_json() const
{
    nlohmann::ordered_json j;
    j["S"] = q_str(S);
    j["W"] = q_str(W);
    j["s_ratio"] = q_str(s_ratio);
    j["w_ratio"] = q_str(w_ratio);
    return j.dump(2) + "\n";
}

LargeSieveReport large_sieve_panel(GeneratorTable & T,
                                   SievePanel const & panel)
{
    LargeSieveReport rep;
    rep.S = 0;
    rep.W = 0;
    for (auto const & p : panel.P) {
        mpz_class zeros = 0;
        mpq_class var = coset_variance(T, panel, p, &zeros);
        rep.S += p.norm() * var;
        mpq_class w(zeros, p.norm());
        w.canonicalize();
        rep.W += w;
    }
    mpq_class scale = mpq_class(panel.Q * panel.Q + panel.X);
    mpz_class count = panel.A.size();
    rep.s_ratio = (scale == 0 || count == 0)
                      ? mpq_class(0)
                      : mpq_class(rep.S / (scale * count));
    rep.w_ratio = scale == 0 ? mpq_class(0)
                             : mpq_class(rep.W * count / scale);
    return rep;
}

}  // namespace euclid
