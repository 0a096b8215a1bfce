#include "euclid/euclidean_core.hpp"

#include "euclid/residue.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace euclid {

namespace {

/* Shift x by lattice vectors of S into the half-open fundamental box
 * [0, S.e/S.den) x [0, S.g/S.den), keeping its coset. */
Elem reduce_mod_lattice(FieldDesc const & F, Lattice2 const & S,
                        Elem const & x)
{
    Elem r = x;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), mpz_class(r.b * S.den).get_mpz_t(),
               mpz_class(S.g * r.den).get_mpz_t());
    r = F.sub(r, Elem(q * S.f, q * S.g, S.den));
    mpz_fdiv_q(q.get_mpz_t(), mpz_class(r.a * S.den).get_mpz_t(),
               mpz_class(S.e * r.den).get_mpz_t());
    r = F.sub(r, Elem(q * S.e, 0, S.den));
    return r;
}

}  // namespace

std::vector<CosetRep> cosets(FieldDesc const & F, EIdeal const & I,
                             IntegralIdeal const & C)
{
    FractionalIdeal IC = mul(F, I.ideal(F), FractionalIdeal(C));
    Lattice2 LC = lattice_of(FractionalIdeal(C));
    auto reps = lattice_quotient_reps(lattice_of(IC), LC);
    std::vector<CosetRep> out;
    out.reserve(reps.size());
    for (auto & r : reps)
        out.push_back(CosetRep{reduce_mod_lattice(F, LC, r), false});
    out.front().zero = true;   // the (0,0) representative leads
    return out;
}

bool generates_module(FieldDesc const & F, Elem const & x, EIdeal const & I,
                      IntegralIdeal const & C)
{
    FractionalIdeal IC = mul(F, I.ideal(F), FractionalIdeal(C));
    if (!contains(F, IC, x))
        throw std::invalid_argument("element outside IC");
    if (x.is_zero())
        return I.is_ring();   // (0) + C = C
    return ideal_sum(F, principal_fractional(F, x), FractionalIdeal(C)) == IC;
}

Elem const & GeneratorTable::x_of(EIdeal const & I, long n)
{
    auto key = std::make_pair(I.inv, n);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    FractionalIdeal target = mul(F_, FractionalIdeal(I.inv),
                                 pow(F_, FractionalIdeal(C_), n));
    if (G_.ideal_class(target).k != 0)
        throw ClassMismatch("[I] != [C^n] for " + I.inv.str());
    Elem x = canonical_generator(F_, target);
    return cache_.emplace(key, std::move(x)).first->second;
}

Elem const & GeneratorTable::x_of(PrimeIdeal const & p, long n)
{
    // (x_p) = p * C^(n-1)
    return x_of(EIdeal{p.hnf}, n - 1);
}

bool mult_xp_iso_check(GeneratorTable & T, PrimeIdeal const & p, long n)
{
    FieldDesc const & F = T.field();
    Elem const & xp = T.x_of(p, n);
    FractionalIdeal Cn = pow(F, FractionalIdeal(T.C()), n);
    FractionalIdeal pCn = mul(F, FractionalIdeal(p.hnf), Cn);
    Lattice2 L = lattice_of(Cn), S = lattice_of(pCn);

    std::set<std::pair<mpz_class, mpz_class>> images;
    auto dom = cosets(F, EIdeal{p.hnf}, T.C());
    for (auto const & c : dom) {
        Elem z = F.mul(xp, c.value);
        if (!lattice_contains(L, z))
            return false;   // image escapes C^n
        images.insert(lattice_coset_id(L, S, z));
    }
    return images.size() == dom.size() && mpz_class(dom.size()) == p.norm();
}

bool is_b1_member(FieldDesc const & F, PrimeIdeal const & p,
                  IntegralIdeal const & C, ClassGroup const & G)
{
    if (valuation(F, FractionalIdeal(C), p) > 0)
        throw std::invalid_argument("prime divides C");
    if (G.ideal_class(p.hnf).k != G.ideal_class(C).k)
        return false;
    ResidueField R(F, p);
    std::vector<mpz_class> gens;
    for (auto const & u : unit_generators(F))
        gens.push_back(R.reduce(u));
    return R.subgroup_order(gens) == R.unit_order();
}

std::vector<Elem> ideal_box(FieldDesc const & F, IntegralIdeal const & J,
                            long H)
{
    (void)F;
    // elements s*(ac) + t*c*(b + omega), coordinates (s*ac + t*cb, t*c)
    std::vector<Elem> out = {Elem(0, 0)};
    mpz_class ac = J.a * J.c, cb = J.b * J.c;
    mpz_class tmax;
    mpz_fdiv_q(tmax.get_mpz_t(), mpz_class(H).get_mpz_t(), J.c.get_mpz_t());
    for (mpz_class t = -tmax; t <= tmax; ++t) {
        mpz_class lo, hi;
        // |s*ac + t*cb| <= H
        mpz_cdiv_q(lo.get_mpz_t(), mpz_class(-H - t * cb).get_mpz_t(),
                   ac.get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), mpz_class(H - t * cb).get_mpz_t(),
                   ac.get_mpz_t());
        for (mpz_class s = lo; s <= hi; ++s) {
            if (s == 0 && t == 0)
                continue;
            out.push_back(Elem(s * ac + t * cb, t * J.c));
        }
    }
    return out;
}

namespace {

bool is_prime_ideal(FieldDesc const & F, IntegralIdeal const & q)
{
    mpz_class n = q.norm();
    if (mpz_probab_prime_p(n.get_mpz_t(), 30))
        return true;
    // inert primes: norm p^2 with HNF (1, 0, p)
    if (q.a == 1 && q.b == 0 &&
        mpz_probab_prime_p(q.c.get_mpz_t(), 30)) {
        for (auto const & [P, m] : factor_prime(q.c, F)) {
            (void)m;
            if (P.hnf == q)
                return true;
        }
    }
    return false;
}

struct SearchState
{
    IntegralIdeal inv;
    std::vector<CosetRep> reps;
    /* per nonzero coset: candidate targets in y-box order, one entry per
     * distinct target, recorded at the first y reaching it */
    std::vector<std::vector<std::pair<Elem, IntegralIdeal>>> cands;
    std::vector<std::optional<std::pair<Elem, IntegralIdeal>>> chosen;
};

}  // namespace

LevelAssignment motzkin_search(FieldDesc const & F, IntegralIdeal const & C,
                               ClassGroup const & G, long B, long H, long k)
{
    if (G.h() > 1 &&
        std::gcd(G.ideal_class(C).k, G.h()) != 1)
        throw ClassMismatch("[C] does not generate the class group");

    LevelAssignment L;
    L.d = F.d();
    L.C = C;
    L.B = B;
    L.H = H;
    L.k = k;
    L.enumerated = ideals_up_to(F, B);
    L.levels[IntegralIdeal{}] = 0;

    FractionalIdeal Cinv = inverse(F, FractionalIdeal(C));
    std::vector<Elem> ybox = ideal_box(F, C, H);

    std::set<IntegralIdeal> prime_hnfs;
    for (auto const & J : L.enumerated)
        if (is_prime_ideal(F, J))
            prime_hnfs.insert(J);

    std::vector<SearchState> states;
    for (auto const & J : L.enumerated) {
        if (J.is_one())
            continue;
        SearchState st;
        st.inv = J;
        st.reps = cosets(F, EIdeal{J}, C);
        st.cands.resize(st.reps.size());
        st.chosen.resize(st.reps.size());
        FractionalIdeal M = mul(F, FractionalIdeal(J), Cinv);
        for (size_t ci = 1; ci < st.reps.size(); ++ci) {
            std::set<IntegralIdeal> seen;
            for (auto const & y : ybox) {
                Elem cand = F.add(st.reps[ci].value, y);
                if (cand.is_zero())
                    continue;
                FractionalIdeal t = mul(F, cand, M);
                if (t.den != 1 || t.num.norm() > B)
                    continue;
                if (seen.insert(t.num).second)
                    st.cands[ci].emplace_back(y, t.num);
            }
        }
        states.push_back(std::move(st));
    }

    /* Phase 1: lambda on prime inverses.  p^-1 enters round i when every
     * nonzero coset of p^-1 C / C reaches the ring or a previously placed
     * prime inverse.
     */
    std::map<IntegralIdeal, long> lambda;
    for (long round = 1; round <= k; ++round) {
        auto snapshot = lambda;
        bool progress = false;
        for (auto & st : states) {
            if (!prime_hnfs.count(st.inv) || snapshot.count(st.inv))
                continue;
            bool all = true;
            for (size_t ci = 1; ci < st.reps.size(); ++ci) {
                if (st.chosen[ci])
                    continue;
                for (auto const & [y, target] : st.cands[ci]) {
                    if (target.is_one() || snapshot.count(target)) {
                        st.chosen[ci] = std::make_pair(y, target);
                        break;
                    }
                }
                if (!st.chosen[ci])
                    all = false;
            }
            if (all) {
                lambda[st.inv] = round;
                progress = true;
            }
        }
        if (!progress)
            break;
    }
    for (auto const & [P, lam] : lambda)
        L.levels[P] = motzkin_omega_base + lam;

    /* Phase 2: completion sweep over everything still unassigned
     * (composite inverses, and primes the bounded phase 1 missed).
     * Levels sit above every phase-1 level, so a witness may descend to
     * any ideal assigned earlier.  Runs to a fixpoint.
     */
    long const offset = 16 * motzkin_omega_base;
    for (long round = 1;; ++round) {
        auto snapshot = L.levels;
        bool progress = false;
        for (auto & st : states) {
            if (snapshot.count(st.inv))
                continue;
            bool all = true;
            for (size_t ci = 1; ci < st.reps.size(); ++ci) {
                if (st.chosen[ci])
                    continue;
                for (auto const & [y, target] : st.cands[ci]) {
                    if (snapshot.count(target)) {
                        st.chosen[ci] = std::make_pair(y, target);
                        break;
                    }
                }
                if (!st.chosen[ci])
                    all = false;
            }
            if (all) {
                L.levels[st.inv] = offset + round;
                progress = true;
            }
        }
        if (!progress)
            break;
    }

    for (auto const & st : states) {
        if (!L.levels.count(st.inv))
            continue;
        for (size_t ci = 1; ci < st.reps.size(); ++ci)
            L.witnesses.push_back(LevelWitness{st.inv, st.reps[ci].value,
                                               st.chosen[ci]->first});
    }
    return L;
}

bool LevelAssignment::full_coverage() const
{
    for (auto const & J : enumerated)
        if (!levels.count(J))
            return false;
    return true;
}

bool verify_assignment(FieldDesc const & F, LevelAssignment const & L,
                       IntegralIdeal const & C)
{
    std::map<std::pair<IntegralIdeal, Elem>, Elem> wit;
    for (auto const & w : L.witnesses)
        wit[{w.inv, w.coset}] = w.y;

    FractionalIdeal Cinv = inverse(F, FractionalIdeal(C));
    for (auto const & [J, lvl] : L.levels) {
        if (lvl == 0) {
            if (!J.is_one())
                return false;
            continue;
        }
        FractionalIdeal M = mul(F, FractionalIdeal(J), Cinv);
        for (auto const & c : cosets(F, EIdeal{J}, C)) {
            if (c.zero)
                continue;
            auto it = wit.find({J, c.value});
            if (it == wit.end())
                return false;
            Elem const & y = it->second;
            if (!contains(F, C, y))
                return false;
            Elem cand = F.add(c.value, y);
            if (cand.is_zero())
                return false;
            FractionalIdeal t = mul(F, cand, M);
            if (t.den != 1)
                return false;
            auto lt = L.levels.find(t.num);
            if (lt == L.levels.end() || lt->second >= lvl)
                return false;
        }
    }
    return true;
}

std::pair<long, std::vector<std::pair<Elem, IntegralIdeal>>>
similar_density(FieldDesc const & F, Elem const & x, EIdeal const & I,
                IntegralIdeal const & C, long X, long H)
{
    if (!generates_module(F, x, I, C))
        throw std::invalid_argument("(x, C) != IC");
    FractionalIdeal M = mul(F, FractionalIdeal(I.inv),
                            inverse(F, FractionalIdeal(C)));
    std::set<IntegralIdeal> seen;
    std::vector<std::pair<Elem, IntegralIdeal>> witnesses;
    for (auto const & y : ideal_box(F, C, H)) {
        Elem cand = F.add(x, y);
        if (cand.is_zero())
            continue;
        FractionalIdeal q = mul(F, cand, M);
        if (q.den != 1 || q.num.norm() > X)
            continue;
        if (!is_prime_ideal(F, q.num))
            continue;
        if (seen.insert(q.num).second)
            witnesses.emplace_back(y, q.num);
    }
    return {static_cast<long>(seen.size()), std::move(witnesses)};
}

std::string LevelAssignment::to_json() const
{
    using json = nlohmann::ordered_json;
    json doc;
    doc["version"] = 1;
    doc["d"] = d;
    doc["C"] = {C.a.get_str(), C.b.get_str(), C.c.get_str()};
    doc["bounds"] = {{"B", B}, {"H", H}, {"k", k}};
    json lv = json::array();
    for (auto const & [J, l] : levels)
        lv.push_back({{"ideal", {J.a.get_str(), J.b.get_str(),
                                 J.c.get_str()}},
                      {"level", l}});
    doc["levels"] = std::move(lv);
    auto elem = [](Elem const & e) {
        return json::array({e.a.get_str(), e.b.get_str(), e.den.get_str()});
    };
    json ws = json::array();
    for (auto const & w : witnesses)
        ws.push_back({{"ideal", {w.inv.a.get_str(), w.inv.b.get_str(),
                                 w.inv.c.get_str()}},
                      {"coset", elem(w.coset)},
                      {"y", elem(w.y)}});
    doc["witnesses"] = std::move(ws);
    json en = json::array();
    for (auto const & J : enumerated)
        en.push_back({J.a.get_str(), J.b.get_str(), J.c.get_str()});
    doc["enumerated"] = std::move(en);
    return doc.dump(2) + "\n";
}

}  // namespace euclid
