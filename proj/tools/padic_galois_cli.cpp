// padic-galois: exact tables, censuses, and Monte Carlo experiments for the
// factorization behavior of random monic polynomials over p-adic integer rings.
//
// Exit codes: 0 all comparisons pass, 1 a comparison failed, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pgal/emit.hpp"
#include "pgal/montecarlo.hpp"
#include "pgal/oracle.hpp"
#include "pgal/split_types.hpp"

using namespace pgal;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

emit::Format resolve_format(const std::string& s) {
    auto f = emit::parse_format(s);
    if (!f) throw UsageError("unknown format: " + s);
    return *f;
}

unsigned resolve_threads(unsigned opt) {
    if (opt > 0) return opt;
    if (const char* env = std::getenv("PADIC_GALOIS_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Int parse_q(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("--q must be an integer");
    }
}

int cmd_exact(int n, const std::string& q_str, bool groups, bool types, bool unramified,
              const std::string& format) {
    emit::Format fmt = resolve_format(format);
    Int q = parse_q(q_str);
    if ((groups ? 1 : 0) + (types ? 1 : 0) + (unramified ? 1 : 0) > 1)
        throw UsageError("--groups, --types and --unramified are mutually exclusive");
    if ((groups || types || unramified) && n != 2 && n != 3)
        throw UsageError("--groups/--types/--unramified require n in {2,3}");
    if (n < 1 || n > 12) throw UsageError("--n must be in [1,12]");
    if (!factor_prime_power(q)) throw UsageError("--q must be a prime power");

    emit::Document doc;
    doc.command = "exact";
    doc.params = {{"n", std::to_string(n)}, {"q", q.get_str()}};
    try {
        if (groups || types) {
            Dist d = n == 2 ? exact_quadratic(q) : exact_cubic(q);
            doc.params.emplace_back("table", groups ? "groups" : "types");
            if (groups)
                for (const auto& [g, v] : d.groups) doc.rows.push_back({g.str(), v});
            else
                for (const auto& [t, v] : d.types) doc.rows.push_back({t.str(), v});
        } else if (unramified) {
            UnramifiedExact u = exact_unramified(n, q);
            doc.params.emplace_back("table", "unramified");
            for (const auto& [t, v] : u.dist.types) doc.rows.push_back({t.str(), v});
            doc.rows.push_back({"unramified-total", u.total_mass});
            doc.rows.push_back({"cond-trivial", u.conditional_trivial});
        } else {
            doc.params.emplace_back("table", "squarefree-reduction");
            Rat total(0);
            for (const auto& mu : all_types(n, true)) {
                Rat v = nu_star(n, q, mu);
                total += v;
                doc.rows.push_back({mu.str(), v});
            }
            doc.rows.push_back({"squarefree-total", total});
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << emit::render(doc, fmt);
    return 0;
}

int cmd_census(int n, const std::string& q_str, unsigned threads, bool force, uint64_t seed,
               const std::string& format) {
    emit::Format fmt = resolve_format(format);
    Int q = parse_q(q_str);
    auto pf = factor_prime_power(q);
    if (!pf) throw UsageError("--q must be a prime power");
    if (n < 1 || n > 12) throw UsageError("--n must be in [1,12]");
    uint64_t cap = force ? ~0ULL : 100000000ULL;
    FqField F = make_field(pf->first, pf->second);

    std::map<SplittingType, Int> counts;
    try {
        counts = census_fq(n, F, cap, resolve_threads(threads), seed);
    } catch (const std::length_error& e) {
        throw UsageError(std::string(e.what()) + " (pass --force to override)");
    }

    emit::Document doc;
    doc.command = "census";
    doc.params = {{"n", std::to_string(n)}, {"q", q.get_str()}};
    bool all_ok = true;
    Int non_squarefree(0);
    for (const auto& [t, c] : counts)
        if (!t.is_star()) non_squarefree += c;
    for (const auto& mu : all_types(n, true)) {
        Int expected = q_count(n, q, mu);
        Int got = counts.count(mu) ? counts.at(mu) : Int(0);
        emit::OutRow row;
        row.label = mu.str();
        row.exact = Rat(expected);
        row.count = got.get_ui();
        row.pass = (expected == got);
        all_ok = all_ok && *row.pass;
        doc.rows.push_back(std::move(row));
    }
    for (const auto& [t, c] : counts) {
        if (t.is_star()) continue;
        emit::OutRow row;
        row.label = t.str();
        row.count = c.get_ui();
        doc.rows.push_back(std::move(row));
    }
    if (n >= 2) {
        emit::OutRow row;
        row.label = "non-squarefree-total";
        row.exact = Rat(int_pow(q, n - 1));
        row.count = non_squarefree.get_ui();
        row.pass = (Int(int_pow(q, n - 1)) == non_squarefree);
        all_ok = all_ok && *row.pass;
        doc.rows.push_back(std::move(row));
    }
    doc.all_pass = all_ok;
    std::cout << emit::render(doc, fmt);
    return all_ok ? 0 : 1;
}

int cmd_verify_bounds(int n, const std::string& q_str, const std::string& format) {
    emit::Format fmt = resolve_format(format);
    Int q = parse_q(q_str);
    if (n < 2 || n > 12) throw UsageError("--n must be in [2,12]");
    BoundReport rep = verify_bounds(n, q);
    if (!rep.feasible)
        throw UsageError("bound infeasible: q must exceed n^2 (n >= 3) or n^2+n (n = 2)");
    emit::Document doc;
    doc.command = "verify-bounds";
    doc.params = {{"n", std::to_string(n)}, {"q", q.get_str()}};
    for (const auto& r : rep.rows) {
        emit::OutRow row;
        row.label = r.mu.str();
        row.exact = r.error;
        row.bound = r.bound;
        row.estimate = to_double(r.bound);
        row.z = r.bound > 0 ? std::optional<double>(to_double(r.error / r.bound)) : std::nullopt;
        row.pass = r.pass;
        doc.rows.push_back(std::move(row));
    }
    doc.all_pass = rep.all_pass;
    std::cout << emit::render(doc, fmt);
    return rep.all_pass ? 0 : 1;
}

int cmd_lemma45(uint64_t p, unsigned f, int k, uint32_t a, const std::string& format) {
    emit::Format fmt = resolve_format(format);
    TripleFactorCount r;
    try {
        r = lemma45_count(p, f, k, a);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::length_error& e) {
        throw UsageError(e.what());
    }
    emit::Document doc;
    doc.command = "lemma45";
    doc.params = {{"p", std::to_string(p)}, {"f", std::to_string(f)}, {"k", std::to_string(k)},
                  {"a", std::to_string(a)}};
    emit::OutRow three{"three-linear"};
    three.exact = Rat(r.closed_form);
    three.count = r.three_linear.get_ui();
    three.pass = r.matches;
    doc.rows.push_back(std::move(three));
    emit::OutRow shape{"shape-total"};
    shape.exact = Rat(r.shape_total);
    shape.count = r.shape_total.get_ui();
    shape.pass = true;
    doc.rows.push_back(std::move(shape));
    emit::OutRow ratio{"ratio"};
    ratio.exact = r.ratio;
    ratio.estimate = to_double(r.ratio);
    doc.rows.push_back(std::move(ratio));
    emit::OutRow limit{"limit"};
    limit.exact = r.limit;
    limit.estimate = to_double(r.limit);
    doc.rows.push_back(std::move(limit));
    doc.all_pass = r.matches;
    std::cout << emit::render(doc, fmt);
    return r.matches ? 0 : 1;
}

int cmd_sample(const ExperimentConfig& base, unsigned threads, const std::string& mode_str,
               const std::string& format) {
    emit::Format fmt = resolve_format(format);
    ExperimentConfig cfg = base;
    auto mode = parse_mode(mode_str);
    if (!mode) throw UsageError("unknown mode: " + mode_str);
    cfg.mode = *mode;
    cfg.threads = resolve_threads(threads);
    ExperimentReport rep;
    try {
        rep = run(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cerr << "sample: " << cfg.samples << " samples in " << rep.wall_ms / 1000.0 << " s ("
              << cfg.threads << " thread" << (cfg.threads == 1 ? "" : "s") << ")\n";
    std::cout << emit::render(emit::report_document(rep), fmt);
    return rep.all_pass ? 0 : 1;
}

int cmd_sweep(int n, const std::string& q_list, uint64_t samples, uint64_t seed, unsigned threads,
              const std::string& format) {
    emit::Format fmt = resolve_format(format);
    std::vector<Int> qs;
    std::string cur;
    for (char c : q_list + ",") {
        if (c == ',') {
            if (!cur.empty()) qs.push_back(parse_q(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (qs.empty()) throw UsageError("--q-list is empty");
    SweepResult res;
    try {
        res = sweep(n, qs, samples, seed, resolve_threads(threads));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit::Document doc;
    doc.command = "sweep";
    doc.params = {{"n", std::to_string(n)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)}};
    for (const auto& row : res.rows) {
        for (size_t i = 0; i < res.types.size(); ++i) {
            emit::OutRow r;
            r.label = "q=" + row.q.get_str() + " " + res.types[i].str();
            r.estimate = row.abs_error[i];
            r.exact = nu_n(res.types[i]);
            r.count = samples;
            doc.rows.push_back(std::move(r));
        }
    }
    std::cout << emit::render(doc, fmt);
    return 0;
}

void print_manifest() {
    std::cout <<
        "quantity                                          command\n"
        "------------------------------------------------  -------------------------------------------\n"
        "squarefree-reduction splitting-type masses        exact --n N --q Q\n"
        "exact quadratic/cubic type distribution           exact --n {2,3} --q Q --types\n"
        "exact quadratic/cubic Galois-group distribution   exact --n {2,3} --q Q --groups\n"
        "unramified-splitting-field distribution           exact --n {2,3} --q Q --unramified\n"
        "brute-force census vs. the counting formulas      census --n N --q Q\n"
        "error bound between type masses and S_n weights   verify-bounds --n N --q Q\n"
        "double-root lift count and its 1/(2q+2) density   lemma45 --p P --f F --k K\n"
        "seeded Monte Carlo with z-scores vs. exact values sample --n N --p P --samples S --mode M\n"
        "convergence of type frequencies as q grows        sweep --n N --q-list Q1,Q2,... --samples S\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributions of splitting types and Galois groups of random monic polynomials "
                 "over p-adic integer rings: exact tables, exhaustive censuses, and seeded "
                 "Monte Carlo experiments."};
    app.require_subcommand(0, 1);
    bool manifest = false;
    app.add_flag("--manifest", manifest, "print the quantity-to-command map and exit");

    // exact
    auto* exact = app.add_subcommand("exact", "exact probability tables");
    int ex_n = 2;
    std::string ex_q = "5", ex_fmt = "table";
    bool ex_groups = false, ex_types = false, ex_unram = false;
    exact->add_option("--n", ex_n, "polynomial degree")->required();
    exact->add_option("--q", ex_q, "residue field size (prime power)")->required();
    exact->add_flag("--groups", ex_groups, "Galois-group table (n in {2,3})");
    exact->add_flag("--types", ex_types, "unconditioned splitting-type table (n in {2,3})");
    exact->add_flag("--unramified", ex_unram, "unramified-splitting-field table (n in {2,3})");
    exact->add_option("--format", ex_fmt, "table|csv|json");

    // census
    auto* census = app.add_subcommand("census", "exhaustive F_q census vs. the counting formulas");
    int ce_n = 2;
    std::string ce_q = "5", ce_fmt = "table";
    unsigned ce_threads = 0;
    bool ce_force = false;
    uint64_t ce_seed = 0;
    census->add_option("--n", ce_n, "polynomial degree")->required();
    census->add_option("--q", ce_q, "residue field size (prime power)")->required();
    census->add_option("--threads", ce_threads, "worker threads (0: all cores)");
    census->add_option("--seed", ce_seed, "factorization stream seed");
    census->add_flag("--force", ce_force, "allow censuses beyond 10^8 polynomials");
    census->add_option("--format", ce_fmt, "table|csv|json");

    // verify-bounds
    auto* vb = app.add_subcommand("verify-bounds", "check the splitting-type error bound");
    int vb_n = 3;
    std::string vb_q = "11", vb_fmt = "table";
    vb->add_option("--n", vb_n, "polynomial degree")->required();
    vb->add_option("--q", vb_q, "residue field size (prime power)")->required();
    vb->add_option("--format", vb_fmt, "table|csv|json");

    // lemma45
    auto* l45 = app.add_subcommand("lemma45", "double-root lift count over O_p/pi^k");
    uint64_t l_p = 5;
    unsigned l_f = 1;
    int l_k = 2;
    uint32_t l_a = 1;
    std::string l_fmt = "table";
    l45->add_option("--p", l_p, "prime (> 3)")->required();
    l45->add_option("--f", l_f, "residue degree");
    l45->add_option("--k", l_k, "pi-adic precision")->required();
    l45->add_option("--a", l_a, "unit residue of the double root (F_q code)");
    l45->add_option("--format", l_fmt, "table|csv|json");

    // sample
    auto* sample = app.add_subcommand("sample", "seeded Monte Carlo experiment");
    ExperimentConfig sc;
    unsigned sa_threads = 0;
    std::string sa_mode = "splitting-types", sa_fmt = "table";
    sample->add_option("--n", sc.n, "polynomial degree")->required();
    sample->add_option("--p", sc.p, "prime (> 2)")->required();
    sample->add_option("--f", sc.f, "residue degree");
    sample->add_option("--e", sc.e, "ramification index");
    sample->add_option("--samples", sc.samples, "number of draws")->required();
    sample->add_option("--seed", sc.seed, "stream seed");
    sample->add_option("--mode", sa_mode,
                       "splitting-types|galois-groups|unramified|star-conditioned");
    sample->add_option("--precision-cap", sc.precision_cap, "digit cap before Undetermined");
    sample->add_option("--threads", sa_threads, "worker threads (0: all cores)");
    sample->add_option("--format", sa_fmt, "table|csv|json");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "type-frequency convergence over growing q");
    int sw_n = 3;
    std::string sw_qlist, sw_fmt = "table";
    uint64_t sw_samples = 100000, sw_seed = 0;
    unsigned sw_threads = 0;
    sweep_cmd->add_option("--n", sw_n, "polynomial degree")->required();
    sweep_cmd->add_option("--q-list", sw_qlist, "comma-separated prime powers")->required();
    sweep_cmd->add_option("--samples", sw_samples, "draws per q");
    sweep_cmd->add_option("--seed", sw_seed, "stream seed");
    sweep_cmd->add_option("--threads", sw_threads, "worker threads (0: all cores)");
    sweep_cmd->add_option("--format", sw_fmt, "table|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (manifest) {
            print_manifest();
            return 0;
        }
        if (exact->parsed()) return cmd_exact(ex_n, ex_q, ex_groups, ex_types, ex_unram, ex_fmt);
        if (census->parsed()) return cmd_census(ce_n, ce_q, ce_threads, ce_force, ce_seed, ce_fmt);
        if (vb->parsed()) return cmd_verify_bounds(vb_n, vb_q, vb_fmt);
        if (l45->parsed()) return cmd_lemma45(l_p, l_f, l_k, l_a, l_fmt);
        if (sample->parsed()) return cmd_sample(sc, sa_threads, sa_mode, sa_fmt);
        if (sweep_cmd->parsed()) return cmd_sweep(sw_n, sw_qlist, sw_samples, sw_seed, sw_threads, sw_fmt);
        std::cout << app.help();
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
