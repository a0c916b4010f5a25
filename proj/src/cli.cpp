#include "mpmrf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpmrf/error.hpp"
#include "mpmrf/io.hpp"
#include "mpmrf/model.hpp"
#include "mpmrf/orders.hpp"
#include "mpmrf/poset.hpp"
#include "mpmrf/sampler.hpp"
#include "mpmrf/spectral.hpp"

namespace mpmrf {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string config_path;
    std::string model_path;
    std::string tree2_path;
    std::string tree_path;
    std::string output;
    std::string json_output;
    std::string format = "dot";
    double tol = kDefaultTol;
    std::uint64_t seed = 20240101;
    long long n_samples = 100000;
    int root = 1;
    int d = 0;
    double lambda = 1.0;
    std::optional<double> alpha;
    std::vector<double> alpha_grid = default_alpha_grid();
    std::vector<double> kappas = {0.0, 0.5, 0.9, 0.99};
    std::vector<int> vertices;
};

// Fills fields left unset on the command line from the JSON config file.
class ConfigDefaults {
public:
    explicit ConfigDefaults(const std::string& path) {
        if (!path.empty()) {
            config_ = read_json_file(path);
            if (!config_.is_object()) throw InputError("config file must hold a JSON object");
        }
    }

    template <typename T>
    void fill(const CLI::Option* opt, const char* key, T& target) const {
        if (opt->count() > 0 || !config_.contains(key)) return;
        try {
            target = config_.at(key).get<T>();
        } catch (const json::exception&) {
            throw InputError(std::string("config field '") + key + "' has the wrong type");
        }
    }

    void fill_optional(const CLI::Option* opt, const char* key, std::optional<double>& target) const {
        double value = 0.0;
        if (opt->count() > 0 || !config_.contains(key)) return;
        fill(opt, key, value);
        target = value;
    }

private:
    json config_ = json::object();
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void check_tol(double tol) {
    if (!(tol > 0.0 && tol <= 1e-3)) throw InputError("tol must lie in (0, 1e-3]");
}

MpmrfModel load_model(const RunConfig& cfg) {
    if (cfg.model_path.empty()) throw InputError("a model file is required (--model)");
    return model_from_json(read_json_file(cfg.model_path));
}

void cmd_pmf(const RunConfig& cfg, std::ostream& out) {
    check_tol(cfg.tol);
    const MpmrfModel model = load_model(cfg);
    Output sink(cfg.output, out);
    sink.stream() << pmf_csv(aggregate_dist(model, cfg.tol));
}

void cmd_allocate(const RunConfig& cfg, std::ostream& out) {
    check_tol(cfg.tol);
    for (double k : cfg.kappas) {
        if (!(k >= 0.0 && k < 1.0)) throw InputError("kappa must lie in [0, 1)");
    }
    const MpmrfModel model = load_model(cfg);
    const DiscreteDist m = aggregate_dist(model, cfg.tol);
    const int d = model.size();

    std::vector<AllocationTable> tables;
    for (Vertex v = 1; v <= d; ++v) tables.push_back(expected_allocation(model, v, m));

    std::ostringstream csv;
    csv << "vertex,cov_with_sum,allocation_total";
    for (double k : cfg.kappas) csv << ",tvar_contribution_" << format_double(k);
    csv << '\n';
    double cov_sum = 0.0;
    double alloc_sum = 0.0;
    std::vector<double> contrib_sum(cfg.kappas.size(), 0.0);
    for (Vertex v = 1; v <= d; ++v) {
        const double cov = cov_with_sum(model, v);
        const double total = tables[v - 1].total();
        cov_sum += cov;
        alloc_sum += total;
        csv << v << ',' << format_double(cov) << ',' << format_double(total);
        for (std::size_t i = 0; i < cfg.kappas.size(); ++i) {
            const double c = tvar_contribution(model, tables[v - 1], m, cfg.kappas[i]);
            contrib_sum[i] += c;
            csv << ',' << format_double(c);
        }
        csv << '\n';
    }
    csv << "sum," << format_double(cov_sum) << ',' << format_double(alloc_sum);
    for (double c : contrib_sum) csv << ',' << format_double(c);
    csv << '\n';
    csv << "target," << format_double(aggregate_variance(model)) << ',' << format_double(d * model.lambda());
    for (double k : cfg.kappas) csv << ',' << format_double(aggregate_tvar(model, m, k));
    csv << '\n';

    // Conditional mean risk sharing must return k at every atom of M.
    double worst = 0.0;
    for (int k = 0; k <= m.support_bound(); ++k) {
        if (m.pmf[k] <= 1e-300) continue;
        double s = 0.0;
        for (const AllocationTable& t : tables) s += t.by_k[k];
        worst = std::max(worst, std::abs(s / m.pmf[k] - k));
    }
    csv << "# max_conditional_mean_error," << format_double(worst) << '\n';
    Output sink(cfg.output, out);
    sink.stream() << csv.str();
}

void cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const MpmrfModel model = load_model(cfg);
    json result;
    if (!cfg.vertices.empty()) {
        if (cfg.vertices.size() != 2) throw InputError("--vertices takes exactly two vertices");
        result = verdict_to_json(synecdochic_compare(model, cfg.vertices[0], cfg.vertices[1]));
        result["mode"] = "synecdochic";
        result["v"] = cfg.vertices[0];
        result["w"] = cfg.vertices[1];
    } else {
        if (cfg.tree2_path.empty()) throw InputError("compare needs --tree2 or --vertices");
        const Tree& t1 = model.tree();
        const Tree t2 = tree_from_json(read_json_file(cfg.tree2_path));
        if (t1.size() != t2.size()) throw InputError("trees have different vertex counts");
        result["mode"] = "shape";
        if (canonical_code(t1) == canonical_code(t2)) {
            result["relation"] = "EQ";
            result["source"] = t1 == t2 ? "identical" : "isomorphic";
        } else {
            std::optional<Move> move;
            try {
                move = identify_move(t1, t2);
            } catch (const InputError&) {
            }
            if (move) {
                const double alpha = cfg.alpha ? *cfg.alpha : model.common_alpha().value_or(-1.0);
                if (!(alpha >= 0.0 && alpha <= 1.0)) {
                    throw InputError("shape comparison needs a homogeneous alpha (model or --alpha)");
                }
                result = verdict_to_json(shape_compare_move(t1, *move, alpha));
                result["mode"] = "shape";
                result["source"] = "single_move";
                result["alpha"] = alpha;
                result["move"] = {{"u", move->u}, {"v", move->v}, {"w", move->w}};
            } else {
                if (t1.size() < kPosetMinSize || t1.size() > kPosetMaxSize) {
                    throw InputError("trees differ by more than one move and d is outside 4..9");
                }
                const ShapePoset poset = build_poset(t1.size(), cfg.alpha_grid, model.lambda());
                const int i = poset.index_of(t1);
                const int j = poset.index_of(t2);
                Relation r = Relation::INCOMPARABLE;
                if (poset.leq(i, j)) r = Relation::LE;
                if (poset.leq(j, i)) r = Relation::GE;
                result["relation"] = to_string(r);
                result["source"] = "poset_closure";
                result["alpha_grid"] = cfg.alpha_grid;
            }
        }
    }
    if (result["relation"] == "INCOMPARABLE") result["note"] = "criterion inconclusive";
    Output sink(cfg.output, out);
    sink.stream() << result.dump(2) << '\n';
}

void cmd_poset(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "dot" && cfg.format != "json") throw InputError("poset --format must be dot or json");
    const ShapePoset poset = build_poset(cfg.d, cfg.alpha_grid, cfg.lambda);
    {
        Output sink(cfg.output, out);
        if (cfg.format == "dot") {
            sink.stream() << hasse_dot(poset);
        } else {
            sink.stream() << poset_to_json(poset).dump(2) << '\n';
        }
    }
    if (!cfg.json_output.empty()) {
        Output sink(cfg.json_output, out);
        sink.stream() << poset_to_json(poset).dump(2) << '\n';
    }
}

void cmd_mc(const RunConfig& cfg, std::ostream& out) {
    check_tol(cfg.tol);
    if (cfg.n_samples < 1) throw InputError("n_samples must be at least 1");
    const MpmrfModel model = load_model(cfg);
    const int d = model.size();
    const double lambda = model.lambda();
    const double mean_m = d * lambda;

    std::vector<double> sum_n(d, 0.0);
    std::vector<double> sum_z(d, 0.0);
    std::vector<double> sum_z2(d, 0.0);
    std::vector<long long> hist;
    long long identical_rows = 0;
    sample_each(model, cfg.root, cfg.seed, cfg.n_samples, [&](std::span<const int> row) {
        long long m = 0;
        bool same = true;
        for (int i = 0; i < d; ++i) {
            m += row[i];
            same = same && row[i] == row[0];
        }
        if (same) ++identical_rows;
        if (m >= static_cast<long long>(hist.size())) hist.resize(m + 1, 0);
        ++hist[m];
        for (int i = 0; i < d; ++i) {
            const double z = (row[i] - lambda) * (static_cast<double>(m) - mean_m);
            sum_n[i] += row[i];
            sum_z[i] += z;
            sum_z2[i] += z * z;
        }
    });

    const double n = static_cast<double>(cfg.n_samples);
    json vertices = json::array();
    bool all_within = true;
    for (int i = 0; i < d; ++i) {
        const double cov = sum_z[i] / n;
        const double se = std::sqrt(std::max(sum_z2[i] / n - cov * cov, 0.0) / n);
        const double exact = cov_with_sum(model, i + 1);
        const bool within = std::abs(cov - exact) <= 3.0 * se;
        all_within = all_within && within;
        vertices.push_back({{"vertex", i + 1},
                            {"mean", sum_n[i] / n},
                            {"cov_with_sum", cov},
                            {"cov_with_sum_exact", exact},
                            {"cov_std_error", se},
                            {"within_3_sigma", within}});
    }

    const DiscreteDist exact_m = aggregate_dist(model, cfg.tol);
    double tv = 0.0;
    const int top = std::max(exact_m.support_bound(), static_cast<int>(hist.size()) - 1);
    for (int k = 0; k <= top; ++k) {
        const double emp = k < static_cast<int>(hist.size()) ? hist[k] / n : 0.0;
        tv += std::abs(emp - exact_m.p(k));
    }
    tv = 0.5 * (tv + exact_m.tail_mass);

    json report{{"n_samples", cfg.n_samples},
                {"seed", cfg.seed},
                {"root", cfg.root},
                {"rng", "mt19937_64"},
                {"vertices", vertices},
                {"all_cov_within_3_sigma", all_within},
                {"identical_component_rows", identical_rows},
                {"tv_distance_M", tv}};
    Output sink(cfg.output, out);
    sink.stream() << report.dump(2) << '\n';
}

void cmd_spectral(const RunConfig& cfg, std::ostream& out) {
    const std::string& path = cfg.tree_path.empty() ? cfg.model_path : cfg.tree_path;
    if (path.empty()) throw InputError("spectral needs --tree");
    const Tree tree = tree_from_json(read_json_file(path));
    json report = spectrum_to_json(spectrum(tree));
    if (!cfg.tree2_path.empty()) {
        const Tree t2 = tree_from_json(read_json_file(cfg.tree2_path));
        const SpectrumReport r2 = spectrum(t2);
        const std::vector<int> d1 = degree_vector(tree);
        report = json{{"tree", report},
                      {"tree2", spectrum_to_json(r2)},
                      {"cospectral", cospectral_pair_check(tree, t2)},
                      {"tree2_majorizes_tree", majorizes(d1, r2.degrees)},
                      {"tree_majorizes_tree2", majorizes(r2.degrees, d1)}};
    }
    Output sink(cfg.output, out);
    sink.stream() << report.dump(2) << '\n';
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Tree-structured Poisson Markov random fields: aggregate laws, allocations, shape orders", "mpmrf"};
    app.require_subcommand(1);
    app.add_option("--config", cfg.config_path, "JSON file supplying defaults for any option below");

    auto* pmf = app.add_subcommand("pmf", "Aggregate pmf of M as CSV (k,p) with a tail_mass trailer");
    auto* allocate = app.add_subcommand("allocate", "Per-vertex covariance, allocation and TVaR contributions");
    auto* compare = app.add_subcommand("compare", "Shape or synecdochic comparison verdict as JSON");
    auto* poset = app.add_subcommand("poset", "Shape poset for d in 4..9 as DOT or JSON");
    auto* mc = app.add_subcommand("mc", "Monte Carlo check of the sampler against exact values");
    auto* spectral = app.add_subcommand("spectral", "Adjacency and Laplacian spectral report");

    // Options shared by several subcommands, with the subcommand owning each.
    struct Shared {
        const CLI::App* sub;
        const CLI::Option* opt;
        std::string key;
    };
    std::vector<Shared> shared;
    for (auto* sub : {pmf, allocate, compare, mc}) {
        shared.push_back({sub, sub->add_option("--model", cfg.model_path, "Model JSON"), "model"});
    }
    for (auto* sub : {pmf, allocate, mc}) {
        shared.push_back({sub, sub->add_option("--tol", cfg.tol, "Tail tolerance in (0, 1e-3]"), "tol"});
    }
    for (auto* sub : {pmf, allocate, compare, poset, mc, spectral}) {
        shared.push_back({sub, sub->add_option("--output,-o", cfg.output, "Output file (default stdout)"), "output"});
    }

    const auto* kappa_opt = allocate->add_option("--kappa", cfg.kappas, "TVaR levels in [0, 1)");
    const auto* tree2_opt = compare->add_option("--tree2", cfg.tree2_path, "Second tree JSON");
    const auto* alpha_opt = compare->add_option("--alpha", cfg.alpha, "Alpha for the shape criterion");
    const auto* vert_opt = compare->add_option("--vertices", cfg.vertices, "Two vertices v w for the synecdochic criterion");
    const auto* grid_c_opt = compare->add_option("--alpha-grid", cfg.alpha_grid, "Grid for poset closure lookups");
    const auto* d_opt = poset->add_option("--d", cfg.d, "Vertex count");
    const auto* grid_opt = poset->add_option("--alpha-grid", cfg.alpha_grid, "Alpha grid in (0, 1)");
    const auto* lambda_opt = poset->add_option("--lambda", cfg.lambda, "Poisson mean");
    const auto* format_opt = poset->add_option("--format", cfg.format, "dot or json");
    const auto* json_out_opt = poset->add_option("--json-output", cfg.json_output, "Also write the JSON poset here");
    const auto* seed_opt = mc->add_option("--seed", cfg.seed, "Generator seed");
    const auto* n_opt = mc->add_option("--n", cfg.n_samples, "Number of draws");
    const auto* root_opt = mc->add_option("--root", cfg.root, "Sampling root");
    const auto* tree_opt = spectral->add_option("--tree", cfg.tree_path, "Tree JSON");
    const auto* tree2_s_opt = spectral->add_option("--tree2", cfg.tree2_path, "Optional second tree for pair checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kExitUsage;
    }

    try {
        const ConfigDefaults defaults(cfg.config_path);
        for (const Shared& s : shared) {
            if (!s.sub->parsed()) continue;
            if (s.key == "tol") defaults.fill(s.opt, "tol", cfg.tol);
            if (s.key == "model") defaults.fill(s.opt, "model", cfg.model_path);
            if (s.key == "output") defaults.fill(s.opt, "output", cfg.output);
        }
        defaults.fill(kappa_opt, "kappa", cfg.kappas);
        defaults.fill(tree2_opt, "tree2", cfg.tree2_path);
        defaults.fill_optional(alpha_opt, "alpha", cfg.alpha);
        defaults.fill(vert_opt, "vertices", cfg.vertices);
        defaults.fill(grid_c_opt, "alpha_grid", cfg.alpha_grid);
        defaults.fill(d_opt, "d", cfg.d);
        defaults.fill(grid_opt, "alpha_grid", cfg.alpha_grid);
        defaults.fill(lambda_opt, "lambda", cfg.lambda);
        defaults.fill(format_opt, "format", cfg.format);
        defaults.fill(json_out_opt, "json_output", cfg.json_output);
        defaults.fill(seed_opt, "seed", cfg.seed);
        defaults.fill(n_opt, "n_samples", cfg.n_samples);
        defaults.fill(root_opt, "root", cfg.root);
        defaults.fill(tree_opt, "tree", cfg.tree_path);
        defaults.fill(tree2_s_opt, "tree2", cfg.tree2_path);

        if (pmf->parsed()) cmd_pmf(cfg, out);
        else if (allocate->parsed()) cmd_allocate(cfg, out);
        else if (compare->parsed()) cmd_compare(cfg, out);
        else if (poset->parsed()) cmd_poset(cfg, out);
        else if (mc->parsed()) cmd_mc(cfg, out);
        else if (spectral->parsed()) cmd_spectral(cfg, out);
    } catch (const InputError& e) {
        err << "error: input: " << one_line(e.what()) << '\n';
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        err << "error: input: " << one_line(e.what()) << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        err << "error: numerical: " << one_line(e.what()) << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace mpmrf
