#pragma once

#include "lipext/generators.hpp"
#include "lipext/measures.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace lipext {

// One test-corpus instance: a generated space, a subset and a measure family.
// Spaces and families are owned here so instances can outlive the builders.
struct CorpusInstance {
    std::string name;
    std::shared_ptr<const FiniteMetricSpace> space;
    std::shared_ptr<const PointCloud> cloud; // null unless coordinate-backed
    std::vector<PointId> subset;
    std::string family_kind; // counting | identity | decay
    std::shared_ptr<const MeasureFamily> family;
};

struct CorpusOptions {
    std::uint64_t seed = 1;
    std::size_t max_points = 200;
    bool include_identity_subsets = false; // S = M rows
};

// paths, grids, trees, Euclidean clouds and H2 clouds with random and
// net-based subsets; deterministic given the seed
std::vector<CorpusInstance> build_extension_corpus(const CorpusOptions& opts);

// smaller spaces (<= ~48 points) with one instance per generator kind and
// measure-family kind, for the lifted-space certificates
std::vector<CorpusInstance> build_lift_corpus(std::uint64_t seed);

// spaces of at most max_points points for the exact-norm and duality oracles
std::vector<CorpusInstance> build_small_corpus(std::uint64_t seed, std::size_t max_points);

} // namespace lipext
