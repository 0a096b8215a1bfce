#include "euclid/sieve.hpp"
#include "euclid/survey.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace euclid;

namespace {

int const exit_ok = 0;
int const exit_precondition = 2;
int const exit_verification = 3;

struct Precondition : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Verification : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/* "unit", "gen", or an explicit HNF triple "a,b,c". */
IntegralIdeal parse_ideal(FieldDesc const & F, ClassGroup const & G,
                          std::string const & spec)
{
    if (spec == "unit")
        return IntegralIdeal{1, 0, 1};
    if (spec == "gen") {
        if (G.h() == 1)
            return IntegralIdeal{1, 0, 1};
        return G.generator()->hnf;
    }
    long a, b, c;
    if (std::sscanf(spec.c_str(), "%ld,%ld,%ld", &a, &b, &c) != 3)
        throw Precondition("ideal spec must be unit, gen, or a,b,c");
    IntegralIdeal I{a, b, c};
    // round-trip through the module generators to validate the HNF
    std::vector<Elem> gens{Elem(I.a * I.c, 0), Elem(I.b * I.c, I.c)};
    if (!(ideal_from_generators(F, gens) == I))
        throw Precondition("triple " + spec + " is not a valid ideal HNF");
    return I;
}

std::vector<long> parse_grid(std::string const & s)
{
    std::vector<long> grid;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos)
            comma = s.size();
        grid.push_back(std::stol(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (grid.empty())
        throw Precondition("empty grid");
    return grid;
}

std::string split_name(SplitType t)
{
    switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    default: return "ramified";
    }
}

void emit_growth(GrowthReport const & rep, std::string const & fmt)
{
    if (fmt == "json")
        std::cout << rep.to_json();
    else
        std::cout << rep.csv();
}

int run(int argc, char ** argv)
{
    CLI::App app{"Euclidean-ideal machinery for quadratic fields"};
    app.require_subcommand(1);

    long d = 0;
    std::string ideal_spec = "gen", out_fmt = "csv", grid_spec, cache_dir;
    std::string inv_spec, coset_spec;
    long x = 0, q = 0, n = 1, height = 20, depth = 6, norm_bound = 30;
    long jobs = 1;

    auto add_common = [&](CLI::App * cmd, bool with_ideal = true) {
        cmd->add_option("--d", d, "squarefree field discriminant base")
            ->required();
        if (with_ideal)
            cmd->add_option("--ideal", ideal_spec,
                            "unit | gen | explicit HNF a,b,c");
    };

    auto * cmd_info = app.add_subcommand("field-info", "basic field data");
    add_common(cmd_info, false);

    auto * cmd_cg = app.add_subcommand("classgroup", "class group data");
    add_common(cmd_cg, false);

    auto * cmd_scan = app.add_subcommand("scan", "per-prime survey");
    add_common(cmd_scan);
    cmd_scan->add_option("--x", x, "scan rational primes up to x")
        ->required();
    cmd_scan->add_option("--jobs", jobs, "worker count");
    cmd_scan->add_option("--cache", cache_dir, "cache directory");

    auto * cmd_b1 = app.add_subcommand("b1-count", "first-level growth");
    add_common(cmd_b1);
    cmd_b1->add_option("--grid", grid_spec, "x grid, comma separated")
        ->required();
    cmd_b1->add_option("--out", out_fmt, "csv | json");
    cmd_b1->add_option("--jobs", jobs, "worker count");
    cmd_b1->add_option("--cache", cache_dir, "cache directory");

    auto * cmd_b2 = app.add_subcommand("b2-bound", "second-level bound");
    add_common(cmd_b2);
    cmd_b2->add_option("--grid", grid_spec, "x grid, comma separated")
        ->required();
    cmd_b2->add_option("--height", height, "witness height bound");
    cmd_b2->add_option("--out", out_fmt, "csv | json");
    cmd_b2->add_option("--jobs", jobs, "worker count");
    cmd_b2->add_option("--cache", cache_dir, "cache directory");

    auto * cmd_cert = app.add_subcommand("certify", "level assignment");
    add_common(cmd_cert);
    cmd_cert->add_option("--norm-bound", norm_bound, "enumerate Nm <= B");
    cmd_cert->add_option("--height", height, "witness height bound");
    cmd_cert->add_option("--depth", depth, "prime-level depth cap");
    cmd_cert->add_option("--out", out_fmt, "json");

    auto * cmd_panel = app.add_subcommand("sieve-panel", "large-sieve panel");
    add_common(cmd_panel);
    cmd_panel->add_option("--n", n, "power index");
    cmd_panel->add_option("--x", x, "ideal norm bound")->required();
    cmd_panel->add_option("--q", q, "prime norm bound")->required();
    cmd_panel->add_option("--out", out_fmt, "json");

    auto * cmd_dens = app.add_subcommand("density", "prime-witness probe");
    add_common(cmd_dens);
    cmd_dens->add_option("--inv", inv_spec, "I^-1 as HNF a,b,c")->required();
    cmd_dens->add_option("--coset", coset_spec,
                         "x in IC as u,v[,den] over the 1,omega basis")
        ->required();
    cmd_dens->add_option("--x", x, "prime norm bound")->required();
    cmd_dens->add_option("--height", height, "witness height bound");

    CLI11_PARSE(app, argc, argv);

    auto F = make_field(d);
    auto G = class_group(F);

    if (cmd_info->parsed()) {
        nlohmann::ordered_json j;
        j["d"] = F.d();
        j["disc"] = F.disc();
        j["omega"] = F.trace_omega() == 1 ? "(1+sqrt(d))/2" : "sqrt(d)";
        j["trace_omega"] = F.trace_omega();
        j["norm_omega"] = F.norm_omega();
        auto U = unit_group(F);
        j["torsion_order"] = U.torsion_order;
        if (U.fundamental)
            j["fundamental_unit"] = U.fundamental->str();
        j["h"] = G.h();
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    if (cmd_cg->parsed()) {
        nlohmann::ordered_json j;
        j["d"] = F.d();
        j["h"] = G.h();
        if (G.generator())
            j["generator"] = G.generator()->hnf.str();
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }

    auto C = parse_ideal(F, G, ideal_spec);
    ScanOptions opts;
    opts.jobs = jobs;
    opts.cache_dir = cache_dir;

    if (cmd_scan->parsed()) {
        std::cout << "p,a,b,c,norm,degree,split,class_exp,f,surjective,"
                     "divides_C,b1_member\n";
        for (auto const & r : scan(F, G, C, x, opts))
            for (auto const & e : r.ideals)
                std::cout << r.p << "," << e.hnf.a << "," << e.hnf.b << ","
                          << e.hnf.c << "," << e.norm << ","
                          << e.residue_degree << ","
                          << split_name(e.split_type) << "," << e.class_exp
                          << "," << e.f << "," << int(e.surjective) << ","
                          << int(e.divides_C) << "," << int(e.b1_member)
                          << "\n";
        return exit_ok;
    }
    if (cmd_b1->parsed()) {
        emit_growth(b1_count(F, G, C, parse_grid(grid_spec), opts), out_fmt);
        return exit_ok;
    }
    if (cmd_b2->parsed()) {
        emit_growth(b2_lower_bound(F, G, C, parse_grid(grid_spec), height,
                                   opts),
                    out_fmt);
        return exit_ok;
    }
    if (cmd_cert->parsed()) {
        auto L = motzkin_search(F, C, G, norm_bound, height, depth);
        if (!verify_assignment(F, L, C))
            throw Verification("level assignment failed re-verification");
        std::cout << L.to_json();
        return exit_ok;
    }
    if (cmd_panel->parsed()) {
        GeneratorTable T(F, C, G);
        auto panel = make_panel(T, n, x, q);
        nlohmann::ordered_json j;
        j["d"] = F.d();
        j["C"] = C.str();
        j["n"] = n;
        j["A_size"] = panel.A.size();
        j["P_size"] = panel.P.size();
        j["X"] = panel.X.get_str();
        j["Q"] = panel.Q.get_str();
        j["heart"] = nlohmann::ordered_json::array();
        for (auto const & p : panel.P) {
            auto rep = sieve_heart_check(T, panel, p);
            nlohmann::ordered_json h = nlohmann::ordered_json::parse(
                rep.to_json());
            h["p_norm"] = p.norm().get_str();
            h["omega_p"] = omega_p(T, panel, p).get_str();
            j["heart"].push_back(std::move(h));
        }
        auto big = large_sieve_panel(T, panel);
        j["large_sieve"] = nlohmann::ordered_json::parse(big.to_json());
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    if (cmd_dens->parsed()) {
        long a, b, c;
        if (std::sscanf(inv_spec.c_str(), "%ld,%ld,%ld", &a, &b, &c) != 3)
            throw Precondition("--inv expects a,b,c");
        EIdeal I{IntegralIdeal{a, b, c}};
        long u, v, den = 1;
        int got = std::sscanf(coset_spec.c_str(), "%ld,%ld,%ld", &u, &v,
                              &den);
        if (got < 2)
            throw Precondition("--coset expects u,v[,den]");
        Elem xe(u, v, den);
        auto [count, witnesses] = similar_density(F, xe, I, C, x, height);
        nlohmann::ordered_json j;
        j["count"] = count;
        j["witnesses"] = nlohmann::ordered_json::array();
        for (auto const & [y, qid] : witnesses) {
            nlohmann::ordered_json w;
            w["y"] = y.str();
            w["prime"] = qid.str();
            j["witnesses"].push_back(std::move(w));
        }
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char ** argv)
{
    try {
        return run(argc, argv);
    } catch (Verification const & e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return exit_verification;
    } catch (std::invalid_argument const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precondition;
    } catch (std::logic_error const & e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return exit_verification;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precondition;
    }
}
