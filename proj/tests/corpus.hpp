#pragma once

// Deterministic test corpus: a fixed table of gauge-generator profiles
// (lengths <= 4, fiber dimensions <= 6, block exponents <= 3 including
// identity blocks, gauge degree <= 2, mixed grams and centers), each
// instantiated at several seeds.  Expected cohomology dimensions are computed
// here from the exponent table alone, independently of the generator's own
// bookkeeping.

#include <string>
#include <vector>

#include "laurel/generator.hpp"

namespace corpus {

using laurel::GaugeProfile;
using laurel::Rat;
using laurel::Scalar;

struct Item {
    std::string name;
    unsigned long long seed = 0;
    GaugeProfile profile;
    std::vector<int> expected_dims;  // per degree 0..m
};

/// Exponent table: expos[q] lists the block exponents based at degree q.
/// Fiber dimensions follow from the cover counts c_q = expos[q].size():
/// n_0 = c_0, n_q = c_{q-1} + c_q, n_m = c_{m-1}; the expected germ
/// cohomology dimension at degree q is the sum of the exponents based there
/// (zero at the top).
inline GaugeProfile profile_from_exponents(const std::vector<std::vector<int>>& expos,
                                           int gauge_degree, bool with_grams,
                                           const Scalar& center) {
    int m = static_cast<int>(expos.size());
    GaugeProfile p;
    p.dims.resize(static_cast<std::size_t>(m) + 1);
    p.dims[0] = static_cast<int>(expos[0].size());
    for (int q = 1; q < m; ++q)
        p.dims[static_cast<std::size_t>(q)] =
            static_cast<int>(expos[static_cast<std::size_t>(q) - 1].size() +
                             expos[static_cast<std::size_t>(q)].size());
    p.dims[static_cast<std::size_t>(m)] =
        static_cast<int>(expos[static_cast<std::size_t>(m) - 1].size());
    for (int q = 0; q < m; ++q)
        for (int e : expos[static_cast<std::size_t>(q)]) p.blocks.push_back({q, e});
    p.gauge_degree = gauge_degree;
    p.with_grams = with_grams;
    p.center = center;
    return p;
}

inline std::vector<int> dims_from_exponents(const std::vector<std::vector<int>>& expos) {
    int m = static_cast<int>(expos.size());
    std::vector<int> d(static_cast<std::size_t>(m) + 1, 0);
    for (int q = 0; q < m; ++q)
        for (int e : expos[static_cast<std::size_t>(q)]) d[static_cast<std::size_t>(q)] += e;
    return d;
}

inline const std::vector<Item>& items() {
    static const std::vector<Item> all = [] {
        struct Shape {
            const char* name;
            std::vector<std::vector<int>> expos;
            // Plain shapes always run with identity inner products at center
            // zero: exact rational stabilization on 6-dimensional fibers with
            // dense grams and shifted centers is disproportionately expensive,
            // so the dimension ceiling and the gram/center variations are
            // exercised by separate shapes.
            bool plain = false;
        };
        const std::vector<Shape> shapes = {
            {"line1", {{1}}},
            {"line2", {{2}}},
            {"line3", {{3}}},
            {"pair12", {{1, 2}}},
            {"triple013", {{0, 1, 3}}},
            {"quad1120", {{1, 1, 2, 0}}},
            {"two121", {{1}, {2}}},
            {"two231", {{1, 0}, {2}}},
            {"two242", {{2, 1}, {0, 3}}},
            {"two363", {{1, 1, 1}, {1, 1, 1}}, true},
            {"two_id", {{0, 0}, {0}}},
            {"two33", {{3}, {3}}},
            {"triple123", {{1, 2, 3}}},
            {"two262", {{2, 0, 1}, {1, 2, 0}}, true},
            {"three1221", {{1}, {2}, {1}}},
            {"three2332", {{1, 0}, {2}, {1, 3}}},
            {"three1331", {{2}, {1, 1}, {0}}},
            {"three2431", {{1, 1}, {0, 2}, {1}}},
            {"four12221", {{1}, {1}, {1}, {1}}},
            {"four23221", {{1, 2}, {0}, {3}, {1}}},
            {"four24332", {{0, 1}, {1, 2}, {1}, {2, 0}}},
        };
        const std::vector<Scalar> centers = {
            Scalar::zero(),
            Scalar::i(),
            Scalar(Rat(1), Rat(1, 2)),
            Scalar(Rat(-1, 3)),
        };
        std::vector<Item> v;
        for (std::size_t s = 0; s < shapes.size(); ++s) {
            for (int run = 0; run < 3; ++run) {
                Item it;
                it.name = shapes[s].name + std::string("/") + std::to_string(run);
                it.seed = 1000ull * (s + 1) + static_cast<unsigned long long>(run);
                it.profile = profile_from_exponents(
                    shapes[s].expos, static_cast<int>((s + static_cast<std::size_t>(run)) % 3),
                    !shapes[s].plain && ((s + static_cast<std::size_t>(run)) % 2) == 1,
                    shapes[s].plain
                        ? Scalar::zero()
                        : centers[(s + static_cast<std::size_t>(run)) % centers.size()]);
                it.expected_dims = dims_from_exponents(shapes[s].expos);
                v.push_back(std::move(it));
            }
        }
        return v;
    }();
    return all;
}

/// The two-term (length 1) subset, used by the minor-valuation cross-checks.
inline std::vector<Item> two_term_items() {
    std::vector<Item> v;
    for (const Item& it : items())
        if (it.profile.dims.size() == 2) v.push_back(it);
    return v;
}

}  // namespace corpus
