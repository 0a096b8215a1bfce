#include "euclid/survey.hpp"

#include "euclid/residue.hpp"
#include "euclid/sieve.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

namespace euclid {

namespace {

/* --- cache ----------------------------------------------------------- */

constexpr std::uint64_t cache_format = 1;

std::uint64_t fnv1a(std::vector<std::uint8_t> const & bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void put_u64(std::vector<std::uint8_t> & out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(std::uint8_t(v >> (8 * i)));
}

std::uint64_t get_u64(std::uint8_t const * p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= std::uint64_t(p[i]) << (8 * i);
    return v;
}

std::uint64_t to_u64(mpz_class const & z)
{
    if (z < 0 || !z.fits_ulong_p())
        throw std::runtime_error("cache value out of range");
    return z.get_ui();
}

/* Payload layout per record: p, ideal count, then per ideal
 * a, b, c, norm, f, class_exp, flags; an fnv checksum trails.
 */
std::vector<std::uint8_t> encode_record(ScanRecord const & r)
{
    std::vector<std::uint8_t> buf;
    put_u64(buf, to_u64(r.p));
    buf.push_back(std::uint8_t(r.ideals.size()));
    for (auto const & e : r.ideals) {
        put_u64(buf, to_u64(e.hnf.a));
        put_u64(buf, to_u64(e.hnf.b));
        put_u64(buf, to_u64(e.hnf.c));
        put_u64(buf, to_u64(e.norm));
        put_u64(buf, to_u64(e.f));
        put_u64(buf, std::uint64_t(std::int64_t(e.class_exp)));
        std::uint8_t flags = 0;
        if (e.surjective)
            flags |= 1;
        if (e.residue_degree == 2)
            flags |= 2;
        flags |= std::uint8_t(int(e.split_type) << 2);
        buf.push_back(flags);
    }
    put_u64(buf, fnv1a(buf));
    return buf;
}

constexpr size_t ideal_bytes = 6 * 8 + 1;

bool decode_record(std::vector<std::uint8_t> const & buf, ScanRecord & out)
{
    std::vector<std::uint8_t> payload(buf.begin(), buf.end() - 8);
    if (fnv1a(payload) != get_u64(buf.data() + buf.size() - 8))
        return false;
    out.p = static_cast<unsigned long>(get_u64(buf.data()));
    size_t n = buf[8];
    out.ideals.clear();
    std::uint8_t const * p = buf.data() + 9;
    for (size_t i = 0; i < n; ++i, p += ideal_bytes) {
        ScanIdeal e;
        e.hnf.a = static_cast<unsigned long>(get_u64(p));
        e.hnf.b = static_cast<unsigned long>(get_u64(p + 8));
        e.hnf.c = static_cast<unsigned long>(get_u64(p + 16));
        e.norm = static_cast<unsigned long>(get_u64(p + 24));
        e.f = static_cast<unsigned long>(get_u64(p + 32));
        e.class_exp = long(std::int64_t(get_u64(p + 40)));
        std::uint8_t flags = p[48];
        e.surjective = flags & 1;
        e.residue_degree = (flags & 2) ? 2 : 1;
        e.split_type = SplitType((flags >> 2) & 3);
        out.ideals.push_back(std::move(e));
    }
    return true;
}

std::string cache_path(std::string const & dir, long d)
{
    return dir + "/scan-d" + std::to_string(d) + ".bin";
}

std::string resolve_cache_dir(ScanOptions const & opts)
{
    if (!opts.cache_dir.empty())
        return opts.cache_dir;
    if (char const * env = std::getenv("EUCIDEAL_CACHE_DIR"))
        return env;
    return {};
}

std::map<long, ScanRecord> load_cache(std::string const & path, long d)
{
    std::map<long, ScanRecord> out;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return out;
    std::string header;
    if (!std::getline(in, header))
        return out;
    try {
        auto j = nlohmann::json::parse(header);
        if (j.at("format") != cache_format || j.at("d") != d)
            return {};
    } catch (...) {
        return {};
    }
    while (true) {
        std::uint8_t head[9];
        if (!in.read(reinterpret_cast<char *>(head), 9))
            break;
        size_t n = head[8];
        if (n == 0 || n > 2)
            break;   // alignment lost; drop the remainder
        std::vector<std::uint8_t> buf(head, head + 9);
        buf.resize(9 + n * ideal_bytes + 8);
        if (!in.read(reinterpret_cast<char *>(buf.data() + 9),
                     std::streamsize(buf.size() - 9)))
            break;
        ScanRecord r;
        if (decode_record(buf, r))
            out[r.p.get_si()] = std::move(r);
        // a checksum failure just skips the record; it gets recomputed
    }
    return out;
}

void append_cache(std::string const & path, long d,
                  std::vector<ScanRecord const *> const & records,
                  bool fresh)
{
    std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, fresh ? std::ios::binary
                                  : std::ios::binary | std::ios::app);
    if (!out)
        throw std::runtime_error("cannot open cache file " + path);
    if (fresh) {
        nlohmann::ordered_json j;
        j["format"] = cache_format;
        j["d"] = d;
        out << j.dump() << "\n";
    }
    for (auto const * r : records) {
        auto buf = encode_record(*r);
        out.write(reinterpret_cast<char const *>(buf.data()),
                  std::streamsize(buf.size()));
    }
    if (!out)
        throw std::runtime_error("write failed on cache file " + path);
}

/* --- scan ------------------------------------------------------------ */

ScanRecord compute_record(FieldDesc const & F, ClassGroup const & G, long p)
{
    ScanRecord r;
    r.p = p;
    for (auto const & [P, e] : factor_prime(p, F)) {
        ScanIdeal entry;
        entry.hnf = P.hnf;
        entry.norm = P.norm();
        entry.residue_degree = P.residue_degree;
        entry.split_type = P.split_type;
        entry.class_exp = G.ideal_class(P.hnf).k;
        auto u = f_p(F, P);
        entry.f = u.f;
        entry.surjective = u.surjective;
        r.ideals.push_back(std::move(entry));
    }
    return r;
}

void decorate(ScanRecord & r, FieldDesc const & F, ClassGroup const & G,
              IntegralIdeal const & C)
{
    long cexp = G.ideal_class(C).k;
    for (auto & e : r.ideals) {
        PrimeIdeal P{r.p, e.residue_degree, e.split_type, e.hnf};
        e.divides_C = valuation(F, FractionalIdeal(C), P) > 0;
        e.b1_member = !e.divides_C && e.class_exp == cexp && e.surjective;
    }
}

std::vector<long> primes_to(long X)
{
    std::vector<long> ps;
    mpz_class p = 1;
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > X)
            break;
        ps.push_back(p.get_si());
    }
    return ps;
}

std::string fmt6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/* --- level-2 certification helpers ----------------------------------- */

/* Do the unit images generate all of (Z/m)^x, with omega mapped to r? */
bool surjective_mod(FieldDesc const & F, mpz_class const & m,
                    mpz_class const & r,
                    std::map<std::pair<mpz_class, mpz_class>, bool> & memo)
{
    auto key = std::make_pair(m, r);
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    auto factors = trial_factor(m - 1);
    auto order_of = [&](mpz_class const & x) {
        mpz_class ord = m - 1;
        for (auto const & [q, e] : factors)
            for (int i = 0; i < e; ++i) {
                mpz_class cand = ord / q, pw;
                mpz_powm(pw.get_mpz_t(), x.get_mpz_t(), cand.get_mpz_t(),
                         m.get_mpz_t());
                if (pw == 1)
                    ord = cand;
                else
                    break;
            }
        return ord;
    };
    mpz_class sub = 1;
    for (auto const & u : unit_generators(F)) {
        mpz_class res = (u.a + u.b * r) % m;
        if (res < 0)
            res += m;
        if (res == 0)
            throw std::logic_error("unit image hit zero");
        mpz_lcm(sub.get_mpz_t(), sub.get_mpz_t(),
                order_of(res).get_mpz_t());
    }
    bool ok = sub == m - 1;
    memo[key] = ok;
    return ok;
}

struct B2Context
{
    FieldDesc const & F;
    ClassGroup const & G;
    IntegralIdeal const & C;
    mpz_class normC;
    std::vector<Elem> box;   // witness elements of C
    std::map<std::pair<mpz_class, mpz_class>, bool> surj_memo;
};

/* Full ideal-arithmetic check that (s) C^-1 is a first-level prime:
 * the slow path, used when the residue shortcut does not apply.
 */
bool full_target_b1(B2Context & ctx, Elem const & s)
{
    FieldDesc const & F = ctx.F;
    FractionalIdeal q = mul(F, principal_fractional(F, s),
                            inverse(F, FractionalIdeal(ctx.C)));
    if (!q.is_integral())
        return false;
    mpz_class nm = q.num.norm();
    mpz_class rp = q.num.c * q.num.a;   // the rational prime under a
                                        // prime HNF (p,b,1) or (1,0,p)
    if (!mpz_probab_prime_p(rp.get_mpz_t(), 25))
        return false;
    for (auto const & [P, e] : factor_prime(rp, F))
        if (P.hnf == q.num && P.norm() == nm) {
            try {
                return is_b1_member(F, P, ctx.C, ctx.G);
            } catch (std::invalid_argument const &) {
                return false;   // target divides C
            }
        }
    return false;
}

/* Certify that every nonzero coset of p^-1 C / C reaches the ring or a
 * first-level prime inverse with a witness from the box.  p principal.
 */
bool certify_level2(B2Context & ctx, PrimeIdeal const & p)
{
    FieldDesc const & F = ctx.F;
    Elem xp;
    try {
        xp = canonical_generator(F, FractionalIdeal(p.hnf));
    } catch (NotPrincipal const &) {
        return false;
    }
    std::vector<Elem> sy;
    sy.reserve(ctx.box.size());
    for (auto const & y : ctx.box)
        sy.push_back(F.mul(xp, y));
    for (auto const & beta : cosets(F, EIdeal{p.hnf}, ctx.C)) {
        if (beta.zero)
            continue;
        Elem sb = F.mul(xp, beta.value);
        bool found = false;
        for (auto const & t : sy) {
            Elem s = F.add(sb, t);   // s = x_p (beta + y), in C
            if (s.is_zero())
                continue;
            mpz_class nm = abs(F.norm_z(s));
            mpz_class n1 = nm / ctx.normC;
            if (n1 * ctx.normC != nm)
                throw std::logic_error("witness norm not divisible");
            if (n1 == 1) {
                found = true;   // target is the ring
                break;
            }
            if (mpz_probab_prime_p(n1.get_mpz_t(), 25)) {
                // degree-1 target q = (s) C^-1 with omega = -U/V mod n1
                mpz_class V = s.b % n1, Vinv;
                if (V < 0)
                    V += n1;
                if (mpz_invert(Vinv.get_mpz_t(), V.get_mpz_t(),
                               n1.get_mpz_t())) {
                    mpz_class r = (-s.a * Vinv) % n1;
                    if (r < 0)
                        r += n1;
                    bool divides_C =
                        ctx.C.a * ctx.C.c % n1 == 0 &&
                        ctx.C.c * (ctx.C.b + r) % n1 == 0;
                    if (!divides_C &&
                        surjective_mod(F, n1, r, ctx.surj_memo)) {
                        found = true;
                        break;
                    }
                } else if (full_target_b1(ctx, s)) {
                    found = true;   // omega root undefined mod n1
                    break;
                }
                continue;
            }
            if (mpz_perfect_square_p(n1.get_mpz_t()) &&
                full_target_b1(ctx, s)) {
                found = true;   // inert target, h = 1 only
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

}  // namespace

std::vector<ScanRecord> scan(FieldDesc const & F, ClassGroup const & G,
                             IntegralIdeal const & C, long X,
                             ScanOptions const & opts)
{
    auto ps = primes_to(X);
    std::string dir = resolve_cache_dir(opts);
    std::string path = dir.empty() ? "" : cache_path(dir, F.d());
    std::map<long, ScanRecord> cached;
    bool had_file = false;
    if (!path.empty()) {
        had_file = std::filesystem::exists(path);
        cached = load_cache(path, F.d());
    }

    std::vector<long> missing;
    for (long p : ps)
        if (!cached.count(p))
            missing.push_back(p);

    std::vector<ScanRecord> fresh(missing.size());
    long jobs = std::max(1L, opts.jobs);
    if (jobs == 1 || missing.size() < 2) {
        for (size_t i = 0; i < missing.size(); ++i)
            fresh[i] = compute_record(F, G, missing[i]);
    } else {
        std::vector<std::thread> workers;
        for (long w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (size_t i = size_t(w); i < missing.size();
                     i += size_t(jobs))
                    fresh[i] = compute_record(F, G, missing[i]);
            });
        for (auto & t : workers)
            t.join();
    }

    if (!path.empty() && !fresh.empty()) {
        std::vector<ScanRecord const *> ptrs;
        for (auto const & r : fresh)
            ptrs.push_back(&r);
        bool valid_header = had_file && !cached.empty();
        if (valid_header)
            append_cache(path, F.d(), ptrs, false);
        else {
            // unreadable or foreign file: rewrite wholesale
            std::vector<ScanRecord const *> all;
            for (auto const & [p, r] : cached)
                all.push_back(&r);
            all.insert(all.end(), ptrs.begin(), ptrs.end());
            append_cache(path, F.d(), all, true);
        }
    }

    std::vector<ScanRecord> out;
    out.reserve(ps.size());
    size_t fi = 0;
    for (long p : ps) {
        auto it = cached.find(p);
        ScanRecord r = it != cached.end() ? it->second : fresh[fi++];
        decorate(r, F, G, C);
        out.push_back(std::move(r));
    }
    return out;
}

std::string GrowthReport::csv() const
{
    std::string s = "x,count," + reference_label + ",ratio\n";
    for (auto const & p : points)
        s += std::to_string(p.x) + "," + std::to_string(p.count) + "," +
             fmt6(p.reference) + "," + fmt6(p.ratio) + "\n";
    return s;
}

std::string GrowthReport::to_json() const
{
    nlohmann::ordered_json j;
    j["reference_label"] = reference_label;
    j["points"] = nlohmann::ordered_json::array();
    for (auto const & p : points) {
        nlohmann::ordered_json e;
        e["x"] = p.x;
        e["count"] = p.count;
        e["reference"] = fmt6(p.reference);
        e["ratio"] = fmt6(p.ratio);
        j["points"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

GrowthReport b1_count(FieldDesc const & F, ClassGroup const & G,
                      IntegralIdeal const & C, std::vector<long> const & x_grid,
                      ScanOptions const & opts)
{
    long maxx = 0;
    for (long x : x_grid)
        maxx = std::max(maxx, x);
    auto records = scan(F, G, C, maxx, opts);

    GrowthReport rep;
    rep.reference_label = "x_over_log2x_heuristic_reference";
    for (long x : x_grid) {
        long count = 0;
        for (auto const & r : records)
            for (auto const & e : r.ideals)
                if (e.b1_member && e.norm <= x)
                    ++count;
        GrowthPoint pt;
        pt.x = x;
        pt.count = count;
        double lg = std::log(double(x));
        pt.reference = x > 1 ? double(x) / (lg * lg) : 0;
        pt.ratio = pt.reference > 0 ? double(count) / pt.reference : 0;
        rep.points.push_back(pt);
    }
    return rep;
}

GrowthReport b2_lower_bound(FieldDesc const & F, ClassGroup const & G,
                            IntegralIdeal const & C,
                            std::vector<long> const & x_grid, long H,
                            ScanOptions const & opts)
{
    if (G.h() > 2)
        throw std::invalid_argument(
            "level-2 certification needs h <= 2: first-level targets "
            "require [C^-1] = [C]");
    long maxx = 0;
    for (long x : x_grid)
        maxx = std::max(maxx, x);
    auto records = scan(F, G, C, maxx, opts);

    long c2 = (2 * G.ideal_class(C).k) % G.h();
    B2Context ctx{F, G, C, C.norm(), ideal_box(F, C, H), {}};

    // certified norms, so grid points reuse one pass
    std::vector<mpz_class> certified;
    for (auto const & r : records)
        for (auto const & e : r.ideals) {
            if (e.norm > maxx)
                continue;
            bool ok = e.b1_member;
            if (!ok && !e.divides_C && e.class_exp == c2) {
                PrimeIdeal P{r.p, e.residue_degree, e.split_type, e.hnf};
                ok = certify_level2(ctx, P);
            }
            if (ok)
                certified.push_back(e.norm);
        }

    GrowthReport rep;
    rep.reference_label = "x_over_h_logx_heuristic_reference";
    for (long x : x_grid) {
        GrowthPoint pt;
        pt.x = x;
        for (auto const & nm : certified)
            if (nm <= x)
                ++pt.count;
        pt.reference =
            x > 1 ? double(x) / (double(G.h()) * std::log(double(x))) : 0;
        pt.ratio = pt.reference > 0 ? double(pt.count) / pt.reference : 0;
        rep.points.push_back(pt);
    }
    return rep;
}

FixtureReport certify_field(long d, IntegralIdeal const & C, long B, long H,
                            long k)
{
    auto t0 = std::chrono::steady_clock::now();
    auto F = make_field(d);
    auto G = class_group(F);
    auto L = motzkin_search(F, C, G, B, H, k);
    FixtureReport rep;
    rep.d = d;
    rep.C = C;
    rep.covered = L.full_coverage();
    rep.verified = verify_assignment(F, L, C);
    for (auto const & [inv, lvl] : L.levels)
        rep.max_level = std::max(rep.max_level, lvl);
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

std::vector<FixtureReport> certify_fixtures()
{
    std::vector<FixtureReport> out;
    for (long d : {-1L, -2L, -3L, -5L, -7L, -11L, -15L}) {
        auto F = make_field(d);
        auto G = class_group(F);
        IntegralIdeal C{1, 0, 1};
        if (G.h() > 1)
            C = G.generator()->hnf;
        auto rep = certify_field(d, C, 30, 20, 6);
        if (!rep.covered || !rep.verified)
            throw std::runtime_error("fixture field d = " + std::to_string(d) +
                                     " failed certification");
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace euclid
