#include "lipext/corpus.hpp"
#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/io.hpp"
#include "lipext/lift.hpp"
#include "lipext/nets.hpp"
#include "lipext/whitney.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace lipext;

namespace {

void emit(const json& payload, const std::string& out_path) {
    const std::string text = payload.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out_path, text);
    }
}

json manifest(const std::string& command, json inputs, std::uint64_t seed) {
    return json{{"format", io::format_tag},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"seed", seed},
                {"tolerances", io::tolerance_manifest()}};
}

int run_gen(const std::string& kind, const json& params, std::uint64_t seed,
            const std::string& out_path) {
    const json spec = {{"format", io::format_tag},
                       {"generator", {{"kind", kind}, {"params", params}, {"seed", seed}}}};
    const io::LoadedSpace loaded = io::space_from_json(spec);
    json payload = io::space_to_json(loaded.space);
    payload["manifest"] = manifest("gen", spec, seed);
    emit(payload, out_path);
    return 0;
}

int run_validate(const std::string& space_path) {
    const json j = io::read_json_file(space_path);
    std::vector<std::vector<double>> rows;
    if (j.contains("dist")) {
        rows = j.at("dist").get<std::vector<std::vector<double>>>();
    } else {
        const auto loaded = io::space_from_json(j); // generator form: built then re-checked
        rows.assign(loaded.space.size(), std::vector<double>(loaded.space.size()));
        for (PointId a = 0; a < loaded.space.size(); ++a)
            for (PointId b = 0; b < loaded.space.size(); ++b) rows[a][b] = loaded.space.dist(a, b);
    }
    const ValidationReport report = validate_metric(rows);
    json payload = {{"ok", report.ok}, {"summary", report.summary()}};
    json violations = json::array();
    for (const auto& t : report.triangle_violations)
        violations.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"excess", t.excess}});
    payload["triangle_violations"] = std::move(violations);
    json entries = json::array();
    for (const auto& [i, j2] : report.entry_violations) entries.push_back({{"i", i}, {"j", j2}});
    payload["entry_violations"] = std::move(entries);
    payload["format_errors"] = report.format_errors;
    payload["manifest"] = manifest("validate", {{"space", space_path}}, 0);
    emit(payload, "");
    return report.ok ? 0 : 1;
}

int run_net(const std::string& space_path, double epsilon, const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const Net net = max_separated_net(loaded.space, epsilon);
    json payload = {{"epsilon", epsilon}, {"points", net.points}};
    payload["manifest"] = manifest("net", {{"space", space_path}, {"epsilon", epsilon}}, 0);
    emit(payload, out_path);
    return 0;
}

int run_whitney(const std::string& space_path, const std::string& subset_csv,
                const std::string& out_path, const std::string& format) {
    const auto loaded = io::load_space_file(space_path);
    const auto subset = io::parse_subset(subset_csv, loaded.space.size());
    const WhitneyApparatus app = build_whitney(loaded.space, subset);
    if (format == "csv") {
        std::ostringstream out;
        out.precision(17);
        out << "# cover radii\nalpha,r_alpha\n";
        for (std::size_t a = 0; a < app.complement.size(); ++a)
            out << app.complement[a] << ',' << app.cover_radii[a] << '\n';
        out << "# selected pairs\nalpha,m1,m2\n";
        for (std::size_t a = 0; a < app.complement.size(); ++a)
            out << app.complement[a] << ',' << app.selected_m1[a] << ',' << app.complement[a]
                << '\n';
        out << "# dugundji matrix rows (columns = subset order)\n";
        for (PointId m = 0; m < loaded.space.size(); ++m) {
            out << m;
            for (std::size_t col = 0; col < app.subset.size(); ++col)
                out << ',' << app.matrix_at(m, col);
            out << '\n';
        }
        if (out_path.empty())
            std::cout << out.str();
        else
            io::write_text_file(out_path, out.str());
        return 0;
    }
    json payload;
    payload["subset"] = app.subset;
    payload["complement"] = app.complement;
    payload["identity_convention"] = app.identity_convention;
    payload["cover_radii"] = app.cover_radii;
    payload["selected_m1"] = app.selected_m1;
    json rows = json::array();
    for (PointId m = 0; m < loaded.space.size(); ++m) {
        json row = json::array();
        for (std::size_t col = 0; col < app.subset.size(); ++col)
            row.push_back(app.matrix_at(m, col));
        rows.push_back(std::move(row));
    }
    payload["dugundji"] = std::move(rows);
    payload["manifest"] =
        manifest("whitney", {{"space", space_path}, {"subset", subset_csv}}, 0);
    emit(payload, out_path);
    return 0;
}

int run_constants(const std::string& space_path, const std::string& family_spec, double r_max,
                  const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const MeasureFamily family = io::family_from_spec(loaded.space, family_spec);
    if (r_max <= 0.0) r_max = std::max(loaded.space.diameter(), 1e-9);
    const std::vector<double> ls = {1.1, 1.25, 1.5, 2.0, 3.0, 4.0};
    const FamilyConstants c = compute_constants(family, r_max, ls);
    std::ostringstream out;
    out.precision(17);
    out << "quantity,value\nD," << c.doubling << "\nC," << c.consistency << "\nR_max," << c.r_max
        << "\nK," << c.uniformity << "\n# dilation table\nl,D_l\n";
    for (const auto& [l, dl] : c.dilation_table) out << l << ',' << dl << '\n';
    if (out_path.empty())
        std::cout << out.str();
    else
        io::write_text_file(out_path, out.str());
    return 0;
}

int run_lift(const std::string& space_path, const std::string& family_spec, int n, double r_max,
             std::size_t grid_size, const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const MeasureFamily family = io::family_from_spec(loaded.space, family_spec);
    if (r_max <= 0.0) r_max = std::max(loaded.space.diameter(), 1e-9);
    const double doubling = family_doubling(family);
    if (n <= 0) n = choose_n(doubling);
    const LiftedSpace lift(family, n);
    const auto grid = default_radius_grid(family, r_max, grid_size);
    const double base_c = consistency(family, r_max);

    const CertReport dil = certify_dilation(lift, grid);
    const CertReport cons = certify_consistency(lift, grid, base_c, r_max);
    const CertReport rad = certify_radial_regularity(lift, grid);

    auto cert_json = [](const CertReport& r) {
        return json{{"sup_found", r.sup_found},
                    {"bound", r.bound},
                    {"margin", r.bound - r.sup_found},
                    {"pass", r.pass},
                    {"evaluations", r.evaluations}};
    };
    json payload = {{"n", n},
                    {"base_doubling", doubling},
                    {"base_consistency", base_c},
                    {"r_max", r_max},
                    {"grid_points", grid.size()},
                    {"dilation", cert_json(dil)},
                    {"consistency", cert_json(cons)},
                    {"radial_regularity", cert_json(rad)}};
    payload["manifest"] = manifest(
        "lift", {{"space", space_path}, {"family", family_spec}, {"grid_size", grid_size}}, 0);

    std::cout << "certificate           sup_found      bound          pass\n";
    auto line = [](const char* name, const CertReport& r) {
        std::printf("%-20s  %-13.6g  %-13.6g  %s\n", name, r.sup_found, r.bound,
                    r.pass ? "yes" : "NO");
    };
    line("dilation", dil);
    line("consistency", cons);
    line("radial_regularity", rad);
    emit(payload, out_path.empty() ? "lift_report.json" : out_path);
    return (dil.pass && cons.pass && rad.pass) ? 0 : 1;
}

int run_extend(const std::string& space_path, const std::string& subset_csv,
               const std::string& family_spec, const std::string& f_path,
               const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const auto subset = io::parse_subset(subset_csv, loaded.space.size());
    const MeasureFamily family = io::family_from_spec(loaded.space, family_spec);
    const ExtensionOperator op = build_operator(loaded.space, subset, family);

    const json fj = io::read_json_file(f_path);
    std::vector<double> f;
    std::size_t k = 1;
    if (fj.is_array() && !fj.empty() && fj.front().is_array()) {
        for (const auto& row : fj) {
            const auto vals = row.get<std::vector<double>>();
            k = vals.size();
            f.insert(f.end(), vals.begin(), vals.end());
        }
    } else {
        f = fj.get<std::vector<double>>();
    }
    const auto extended = op.apply(f, k);
    const double lip = lipschitz_constant(loaded.space, extended, k);

    json rows = json::array();
    for (PointId m = 0; m < loaded.space.size(); ++m) {
        if (k == 1) {
            rows.push_back(extended[m]);
        } else {
            json row = json::array();
            for (std::size_t c = 0; c < k; ++c) row.push_back(extended[m * k + c]);
            rows.push_back(std::move(row));
        }
    }
    json payload = {{"values", std::move(rows)}, {"lipschitz_constant", lip}};
    payload["manifest"] = manifest(
        "extend",
        {{"space", space_path}, {"subset", subset_csv}, {"family", family_spec}, {"f", f_path}}, 0);
    emit(payload, out_path);
    return 0;
}

int run_opnorm(const std::string& space_path, const std::string& subset_csv,
               const std::string& family_spec, const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const auto subset = io::parse_subset(subset_csv, loaded.space.size());
    const MeasureFamily family = io::family_from_spec(loaded.space, family_spec);
    const ExtensionOperator op = build_operator(loaded.space, subset, family);
    const OperatorNorm norm = operator_norm_exact(op);
    json payload = {{"norm", norm.value},
                    {"attaining_pair", {norm.attaining.first, norm.attaining.second}},
                    {"dual_extremal", norm.dual_extremal},
                    {"degenerate_subset", norm.degenerate_subset}};
    payload["manifest"] = manifest(
        "opnorm", {{"space", space_path}, {"subset", subset_csv}, {"family", family_spec}}, 0);
    emit(payload, out_path);
    return 0;
}

int run_kr(const std::string& space_path, const std::string& chain_path,
           const std::string& out_path) {
    const auto loaded = io::load_space_file(space_path);
    const BalancedChain chain = io::chain_from_json(io::read_json_file(chain_path));
    const KrResult result = kr_norm(loaded.space, chain);
    json flows = json::array();
    for (const auto& e : result.plan.flows)
        flows.push_back({{"from", e.from}, {"to", e.to}, {"amount", e.amount}});
    json payload = {{"value", result.value}, {"plan", std::move(flows)}};
    payload["manifest"] = manifest("kr", {{"space", space_path}, {"chain", chain_path}}, 0);
    emit(payload, out_path);
    return 0;
}

int run_report(const std::string& space_path, const std::string& subset_csv,
               const std::string& family_spec, double r_max, const std::string& out_path,
               const std::string& format) {
    const auto loaded = io::load_space_file(space_path);
    const auto subset = io::parse_subset(subset_csv, loaded.space.size());
    const MeasureFamily family = io::family_from_spec(loaded.space, family_spec);
    if (r_max <= 0.0) r_max = std::max(loaded.space.diameter(), 1e-9);
    const BoundReport report = bound_report(loaded.space, subset, family, r_max);
    if (format == "csv") {
        std::string text = io::bound_report_csv_header() + "\n" +
                           io::bound_report_csv_row(space_path, report) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            io::write_text_file(out_path, text);
        return 0;
    }
    json payload = io::bound_report_to_json(report);
    payload["manifest"] = manifest(
        "report",
        {{"space", space_path}, {"subset", subset_csv}, {"family", family_spec}, {"r_max", r_max}},
        0);
    emit(payload, out_path);
    return 0;
}

int run_sweep(std::uint64_t seed, std::size_t max_points, std::size_t threads,
              const std::string& out_path) {
    CorpusOptions opts;
    opts.seed = seed;
    opts.max_points = std::min<std::size_t>(max_points, 64);
    opts.include_identity_subsets = true;
    const auto corpus = build_extension_corpus(opts);

    std::vector<std::string> rows(corpus.size());
    std::atomic<std::size_t> next{0};
    std::mutex errors_mutex;
    std::vector<std::string> errors;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= corpus.size()) return;
            const auto& inst = corpus[i];
            try {
                const BoundReport report =
                    bound_report(*inst.space, inst.subset, *inst.family,
                                 std::max(inst.space->diameter(), 1e-9));
                rows[i] = io::bound_report_csv_row(inst.name + "_" + inst.family_kind, report);
            } catch (const std::exception& e) {
                rows[i] = inst.name + "_" + inst.family_kind + ",ERROR";
                std::lock_guard<std::mutex> lock(errors_mutex);
                errors.push_back(inst.name + ": " + e.what());
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream out;
    out << io::bound_report_csv_header() << "\n";
    for (const auto& row : rows) out << row << "\n";
    if (out_path.empty())
        std::cout << out.str();
    else
        io::write_text_file(out_path, out.str());
    for (const auto& e : errors) std::cerr << "instance failed: " << e << "\n";
    return errors.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz extension operators on finite metric spaces"};
    app.require_subcommand(1);

    std::string space_path, family_spec = "counting", subset_csv, out_path, chain_path, f_path;
    std::string gen_kind, format = "json";
    std::uint64_t seed = 0;
    double epsilon = 1.0, r_max = 0.0;
    int lift_n = 0;
    std::size_t grid_size = 512, max_points = 64, threads = 0, gen_n = 8, gen_k = 3,
                gen_branching = 2, gen_depth = 3, gen_dim = 2;
    double gen_radius = 2.0;

    auto* gen = app.add_subcommand("gen", "generate a space file (explicit matrix form)");
    gen->add_option("--kind", gen_kind, "path|grid|tree|euclidean|h2")->required();
    gen->add_option("--n", gen_n, "points (path, euclidean, h2)");
    gen->add_option("--k", gen_k, "grid side");
    gen->add_option("--branching", gen_branching, "tree branching");
    gen->add_option("--depth", gen_depth, "tree depth");
    gen->add_option("--dim", gen_dim, "euclidean dimension");
    gen->add_option("--radius", gen_radius, "h2 hyperbolic radius");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out", out_path, "output file");

    auto* validate = app.add_subcommand("validate", "check metric invariants of a space file");
    validate->add_option("--space", space_path)->required();

    auto* net = app.add_subcommand("net", "maximal epsilon-separated net");
    net->add_option("--space", space_path)->required();
    net->add_option("--epsilon", epsilon)->required();
    net->add_option("--out", out_path);

    auto* whitney = app.add_subcommand("whitney", "Dugundji cover, pairs and matrix");
    whitney->add_option("--space", space_path)->required();
    whitney->add_option("--subset", subset_csv)->required();
    whitney->add_option("--out", out_path);
    whitney->add_option("--format", format, "json|csv");

    auto* constants = app.add_subcommand("constants", "family constants D, C, K and D(l) table");
    constants->add_option("--space", space_path)->required();
    constants->add_option("--family", family_spec, "counting|identity|decay|file.json");
    constants->add_option("--rmax", r_max);
    constants->add_option("--out", out_path);

    auto* lift = app.add_subcommand("lift", "certify the lifted-space bounds");
    lift->add_option("--space", space_path)->required();
    lift->add_option("--family", family_spec);
    lift->add_option("--n", lift_n, "lift dimension (default: floor(log2 D) + 6)");
    lift->add_option("--rmax", r_max);
    lift->add_option("--grid-size", grid_size);
    lift->add_option("--out", out_path);

    auto* extend = app.add_subcommand("extend", "apply the extension operator to boundary data");
    extend->add_option("--space", space_path)->required();
    extend->add_option("--subset", subset_csv)->required();
    extend->add_option("--family", family_spec);
    extend->add_option("--f", f_path, "values on the subset (JSON array or matrix)")->required();
    extend->add_option("--out", out_path);

    auto* opnorm = app.add_subcommand("opnorm", "exact operator norm with dual extremal");
    opnorm->add_option("--space", space_path)->required();
    opnorm->add_option("--subset", subset_csv)->required();
    opnorm->add_option("--family", family_spec);
    opnorm->add_option("--out", out_path);

    auto* kr = app.add_subcommand("kr", "Kantorovich-Rubinstein norm of a balanced chain");
    kr->add_option("--space", space_path)->required();
    kr->add_option("--chain", chain_path)->required();
    kr->add_option("--out", out_path);

    auto* report = app.add_subcommand("report", "full bound report for one instance");
    report->add_option("--space", space_path)->required();
    report->add_option("--subset", subset_csv)->required();
    report->add_option("--family", family_spec);
    report->add_option("--rmax", r_max);
    report->add_option("--out", out_path);
    report->add_option("--format", format, "json|csv");

    auto* sweep = app.add_subcommand("sweep", "bound reports across the generated corpus");
    sweep->add_option("--seed", seed);
    sweep->add_option("--max-points", max_points);
    sweep->add_option("--threads", threads);
    sweep->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage errors
    }

    try {
        if (gen->parsed()) {
            json params;
            if (gen_kind == "path") params = {{"n", gen_n}};
            if (gen_kind == "grid") params = {{"k", gen_k}};
            if (gen_kind == "tree") params = {{"branching", gen_branching}, {"depth", gen_depth}};
            if (gen_kind == "euclidean") params = {{"n", gen_n}, {"dim", gen_dim}};
            if (gen_kind == "h2") params = {{"n", gen_n}, {"radius", gen_radius}};
            return run_gen(gen_kind, params, seed, out_path);
        }
        if (validate->parsed()) return run_validate(space_path);
        if (net->parsed()) return run_net(space_path, epsilon, out_path);
        if (whitney->parsed()) return run_whitney(space_path, subset_csv, out_path, format);
        if (constants->parsed()) return run_constants(space_path, family_spec, r_max, out_path);
        if (lift->parsed())
            return run_lift(space_path, family_spec, lift_n, r_max, grid_size, out_path);
        if (extend->parsed())
            return run_extend(space_path, subset_csv, family_spec, f_path, out_path);
        if (opnorm->parsed()) return run_opnorm(space_path, subset_csv, family_spec, out_path);
        if (kr->parsed()) return run_kr(space_path, chain_path, out_path);
        if (report->parsed())
            return run_report(space_path, subset_csv, family_spec, r_max, out_path, format);
        if (sweep->parsed()) return run_sweep(seed, max_points, threads, out_path);
    } catch (const std::exception& e) {
        json diagnostic = {{"error", e.what()}};
        std::cerr << diagnostic.dump() << "\n";
        return 1;
    }
    return 2;
}
