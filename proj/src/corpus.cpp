#include "lipext/corpus.hpp"

#include "lipext/nets.hpp"
#include "lipext/rng.hpp"

#include <algorithm>
#include <cmath>

namespace lipext {

namespace {

std::shared_ptr<const MeasureFamily> make_family(const std::shared_ptr<const FiniteMetricSpace>& s,
                                                 const std::string& kind) {
    if (kind == "identity") return std::make_shared<MeasureFamily>(identity_family(*s));
    if (kind == "decay") return std::make_shared<MeasureFamily>(decay_family(*s, 1.0));
    return std::make_shared<MeasureFamily>(counting_family(*s));
}

std::vector<PointId> random_subset(const FiniteMetricSpace& space, std::size_t target, Rng& rng) {
    const std::size_t n = space.size();
    target = std::clamp<std::size_t>(target, 1, n);
    std::vector<PointId> all(n);
    for (PointId i = 0; i < n; ++i) all[i] = i;
    // partial Fisher-Yates draw
    for (std::size_t i = 0; i < target; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(all[i], all[j]);
    }
    std::vector<PointId> subset(all.begin(), all.begin() + target);
    std::sort(subset.begin(), subset.end());
    return subset;
}

std::vector<PointId> net_subset(const FiniteMetricSpace& space, double fraction) {
    const double eps = std::max(space.min_positive_distance(), fraction * space.diameter());
    return max_separated_net(space, eps).points;
}

struct NamedSpace {
    std::string name;
    std::shared_ptr<const FiniteMetricSpace> space;
    std::shared_ptr<const PointCloud> cloud;
};

std::vector<NamedSpace> generator_suite(std::uint64_t seed, std::size_t max_points) {
    std::vector<NamedSpace> out;
    auto add_space = [&](std::string name, FiniteMetricSpace s) {
        if (s.size() <= max_points)
            out.push_back({std::move(name), std::make_shared<FiniteMetricSpace>(std::move(s)),
                           nullptr});
    };
    auto add_cloud = [&](std::string name, PointCloud c) {
        if (c.space.size() <= max_points) {
            auto cloud = std::make_shared<PointCloud>(std::move(c));
            out.push_back({std::move(name),
                           std::shared_ptr<const FiniteMetricSpace>(cloud, &cloud->space), cloud});
        }
    };

    for (std::size_t n : {4, 8, 16, 32, 64, 128, 200})
        add_space("path" + std::to_string(n), gen_path(n));
    for (std::size_t k : {2, 3, 5, 8, 11, 14}) add_cloud("grid" + std::to_string(k), gen_grid(k));
    for (auto [b, d] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 3},
                        {3, 4}})
        add_space("tree" + std::to_string(b) + "x" + std::to_string(d), gen_tree(b, d));
    std::size_t cloud_id = 0;
    for (std::size_t n : {10, 25, 60, 120, 200}) {
        for (std::size_t dim : {1, 2, 3}) {
            add_cloud("euclid" + std::to_string(n) + "d" + std::to_string(dim),
                      gen_euclidean_cloud(n, dim, seed + 100 + cloud_id));
            ++cloud_id;
        }
    }
    for (std::size_t n : {10, 30, 70, 140}) {
        for (double radius : {1.0, 3.0}) {
            add_space("h2_" + std::to_string(n) + "r" + std::to_string(int(radius)),
                      gen_h2_cloud(n, radius, seed + 500 + n));
        }
    }
    return out;
}

} // namespace

std::vector<CorpusInstance> build_extension_corpus(const CorpusOptions& opts) {
    std::vector<CorpusInstance> corpus;
    Rng rng(opts.seed);
    const auto spaces = generator_suite(opts.seed, opts.max_points);
    const char* families[] = {"counting", "identity", "decay"};
    std::size_t family_rotor = 0;

    for (const auto& named : spaces) {
        const std::size_t n = named.space->size();
        std::vector<std::vector<PointId>> subsets;
        subsets.push_back(random_subset(*named.space, std::max<std::size_t>(2, n / 4), rng));
        subsets.push_back(random_subset(*named.space, std::max<std::size_t>(2, n / 2), rng));
        if (n >= 4) subsets.push_back(random_subset(*named.space, std::max<std::size_t>(2, 3), rng));
        if (n >= 3) subsets.push_back(net_subset(*named.space, 0.25));
        if (n >= 6)
            subsets.push_back(random_subset(*named.space, std::max<std::size_t>(2, 3 * n / 4), rng));
        if (opts.include_identity_subsets) {
            std::vector<PointId> all(n);
            for (PointId i = 0; i < n; ++i) all[i] = i;
            subsets.push_back(std::move(all));
        }

        std::size_t sub_id = 0;
        for (auto& subset : subsets) {
            const std::string family_kind = families[family_rotor++ % 3];
            CorpusInstance inst;
            inst.name = named.name + "_s" + std::to_string(sub_id++);
            inst.space = named.space;
            inst.cloud = named.cloud;
            inst.subset = std::move(subset);
            inst.family_kind = family_kind;
            inst.family = make_family(named.space, family_kind);
            corpus.push_back(std::move(inst));
        }
    }
    return corpus;
}

std::vector<CorpusInstance> build_lift_corpus(std::uint64_t seed) {
    std::vector<NamedSpace> spaces;
    auto hold = [&](std::string name, FiniteMetricSpace s) {
        spaces.push_back({std::move(name), std::make_shared<FiniteMetricSpace>(std::move(s)),
                          nullptr});
    };
    hold("path8", gen_path(8));
    hold("path32", gen_path(32));
    hold("grid5", gen_grid(5).space);
    hold("tree2x3", gen_tree(2, 3));
    hold("tree2x4", gen_tree(2, 4));
    hold("euclid24d2", gen_euclidean_cloud(24, 2, seed + 11).space);
    hold("euclid24d3", gen_euclidean_cloud(24, 3, seed + 12).space);
    hold("h2_24", gen_h2_cloud(24, 2.0, seed + 13));
    hold("point1", gen_path(1));

    std::vector<CorpusInstance> corpus;
    for (const auto& named : spaces) {
        for (const char* kind : {"counting", "identity", "decay"}) {
            CorpusInstance inst;
            inst.name = named.name + "_" + kind;
            inst.space = named.space;
            inst.family_kind = kind;
            inst.family = make_family(named.space, kind);
            corpus.push_back(std::move(inst));
        }
    }
    return corpus;
}

std::vector<CorpusInstance> build_small_corpus(std::uint64_t seed, std::size_t max_points) {
    std::vector<NamedSpace> spaces;
    auto hold = [&](std::string name, FiniteMetricSpace s) {
        spaces.push_back({std::move(name), std::make_shared<FiniteMetricSpace>(std::move(s)),
                          nullptr});
    };
    hold("path3", gen_path(3));
    hold("path7", gen_path(std::min<std::size_t>(7, max_points)));
    hold("path12", gen_path(std::min<std::size_t>(12, max_points)));
    hold("tree2x2", gen_tree(2, 2));
    hold("grid3", gen_grid(3).space);
    hold("euclid10d2", gen_euclidean_cloud(std::min<std::size_t>(10, max_points), 2, seed + 3).space);
    hold("h2_9", gen_h2_cloud(std::min<std::size_t>(9, max_points), 1.5, seed + 4));

    Rng rng(seed);
    std::vector<CorpusInstance> corpus;
    std::size_t rotor = 0;
    const char* families[] = {"counting", "decay", "identity"};
    for (const auto& named : spaces) {
        if (named.space->size() > max_points) continue;
        const std::size_t n = named.space->size();
        for (std::size_t variant = 0; variant < 2; ++variant) {
            CorpusInstance inst;
            inst.name = named.name + "_v" + std::to_string(variant);
            inst.space = named.space;
            const std::size_t target =
                std::clamp<std::size_t>(2 + rng.below(std::max<std::size_t>(n - 1, 2)), 2,
                                        std::min<std::size_t>(8, n));
            inst.subset = random_subset(*named.space, target, rng);
            inst.family_kind = families[rotor++ % 3];
            inst.family = make_family(named.space, inst.family_kind);
            corpus.push_back(std::move(inst));
        }
    }
    return corpus;
}

} // namespace lipext
