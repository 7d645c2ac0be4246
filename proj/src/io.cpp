#include "lipext/io.hpp"

#include "lipext/tolerances.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lipext::io {

using nlohmann::json;

json space_to_json(const FiniteMetricSpace& space) {
    json j;
    j["format"] = format_tag;
    j["labels"] = space.labels();
    json rows = json::array();
    for (PointId i = 0; i < space.size(); ++i) {
        json row = json::array();
        for (PointId k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    return j;
}

namespace {

LoadedSpace from_generator(const json& gen) {
    const std::string kind = gen.at("kind").get<std::string>();
    const json params = gen.value("params", json::object());
    const std::uint64_t seed = gen.value("seed", std::uint64_t{0});
    LoadedSpace loaded{FiniteMetricSpace({"0"}, {0.0}), std::nullopt, json{}};
    if (kind == "path") {
        loaded.space = gen_path(params.at("n").get<std::size_t>());
    } else if (kind == "grid") {
        auto cloud = gen_grid(params.at("k").get<std::size_t>());
        loaded.space = cloud.space;
        loaded.cloud = std::move(cloud);
    } else if (kind == "tree") {
        loaded.space = gen_tree(params.at("branching").get<std::size_t>(),
                                params.at("depth").get<std::size_t>());
    } else if (kind == "euclidean") {
        auto cloud = gen_euclidean_cloud(params.at("n").get<std::size_t>(),
                                         params.at("dim").get<std::size_t>(), seed);
        loaded.space = cloud.space;
        loaded.cloud = std::move(cloud);
    } else if (kind == "h2") {
        loaded.space =
            gen_h2_cloud(params.at("n").get<std::size_t>(), params.at("radius").get<double>(), seed);
    } else {
        throw std::invalid_argument("unknown generator kind: " + kind);
    }
    return loaded;
}

} // namespace

LoadedSpace space_from_json(const json& j) {
    if (j.contains("generator")) {
        LoadedSpace loaded = from_generator(j.at("generator"));
        loaded.source = j;
        return loaded;
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
    }
    const auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
    if (labels.empty()) {
        for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::to_string(i));
    }
    LoadedSpace loaded{FiniteMetricSpace::from_rows(std::move(labels), rows), std::nullopt, j};
    return loaded;
}

LoadedSpace load_space_file(const std::string& path) {
    return space_from_json(read_json_file(path));
}

json family_to_json(const MeasureFamily& family) {
    json j;
    j["format"] = format_tag;
    j["space"] = space_to_json(family.base());
    json rows = json::array();
    const std::size_t n = family.size();
    for (std::size_t m = 0; m < n; ++m) {
        json row = json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(family.weight(m, k));
        rows.push_back(std::move(row));
    }
    j["weights"] = std::move(rows);
    return j;
}

MeasureFamily family_from_spec(const FiniteMetricSpace& space, const std::string& spec) {
    if (spec == "counting") return counting_family(space);
    if (spec == "identity") return identity_family(space);
    if (spec == "decay") return decay_family(space, 1.0);
    // otherwise a file: {"weights": [[...]]}; the space must match in size
    const json j = read_json_file(spec);
    const auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
    if (rows.size() != space.size())
        throw std::invalid_argument("family file size does not match the space");
    std::vector<double> flat;
    flat.reserve(space.size() * space.size());
    for (const auto& row : rows) {
        if (row.size() != space.size())
            throw std::invalid_argument("family file has a ragged weight matrix");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return MeasureFamily(space, std::move(flat));
}

BalancedChain chain_from_json(const json& j) {
    BalancedChain chain;
    chain.coefficients = j.at("coefficients").get<std::vector<double>>();
    return chain;
}

std::vector<PointId> parse_subset(const std::string& csv, std::size_t space_size) {
    std::vector<PointId> subset;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        const std::size_t idx = std::stoul(item);
        if (idx >= space_size) throw std::invalid_argument("subset index out of range: " + item);
        subset.push_back(idx);
    }
    if (subset.empty()) throw std::invalid_argument("subset is empty");
    return subset;
}

json tolerance_manifest() {
    return json{{"triangle_slack_rel", tol::triangle_slack_rel},
                {"row_sum", tol::row_sum},
                {"chain_balance_rel", tol::chain_balance_rel},
                {"duality_gap", tol::duality_gap},
                {"certificate_slack", tol::certificate_slack},
                {"identity_rel", tol::identity_rel}};
}

json bound_report_to_json(const BoundReport& r) {
    return json{{"doubling", r.doubling},
                {"consistency", r.consistency},
                {"r_max", r.r_max},
                {"uniformity", r.uniformity},
                {"n", r.n},
                {"l", r.l},
                {"dilation_sup", r.dilation_sup},
                {"dilation_bound", r.dilation_bound},
                {"consistency_sup", r.consistency_sup},
                {"consistency_bound", r.consistency_bound},
                {"radial_sup", r.radial_sup},
                {"radial_bound", r.radial_bound},
                {"certificates_pass", r.certificates_pass},
                {"k_n_l", r.k_n_l},
                {"lifted_norm_bound", r.lifted_norm_bound},
                {"shape_bound", r.shape_bound},
                {"empirical_norm", r.empirical_norm},
                {"degenerate_subset", r.degenerate_subset},
                {"norm_to_shape_ratio", r.norm_to_shape_ratio},
                {"subset_separation", r.subset_separation},
                {"net_embed_r0_unit_mu", r.net_embed_r0_unit_mu}};
}

std::string bound_report_csv_header() {
    return "instance,doubling,consistency,r_max,uniformity,n,l,dilation_sup,dilation_bound,"
           "consistency_sup,consistency_bound,radial_sup,radial_bound,certificates_pass,k_n_l,"
           "lifted_norm_bound,shape_bound,empirical_norm,degenerate_subset,norm_to_shape_ratio";
}

std::string bound_report_csv_row(const std::string& instance, const BoundReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << instance << ',' << r.doubling << ',' << r.consistency << ',' << r.r_max << ','
        << r.uniformity << ',' << r.n << ',' << r.l << ',' << r.dilation_sup << ','
        << r.dilation_bound << ',' << r.consistency_sup << ',' << r.consistency_bound << ','
        << r.radial_sup << ',' << r.radial_bound << ',' << (r.certificates_pass ? 1 : 0) << ','
        << r.k_n_l << ',' << r.lifted_norm_bound << ',' << r.shape_bound << ',' << r.empirical_norm << ','
        << (r.degenerate_subset ? 1 : 0) << ',' << r.norm_to_shape_ratio;
    return out.str();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace lipext::io
