#include "atkde/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "atkde/stats.hpp"

namespace atkde {

std::vector<int> dbscan(const std::vector<std::vector<double>>& points, double eps,
                        std::size_t min_samples) {
    const std::size_t n = points.size();
    std::vector<int> labels(n, -1);  // -1 unvisited, 0 noise

    auto neighbors = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n; ++j)
            if (euclidean_distance(points[i], points[j]) <= eps) out.push_back(j);
        return out;
    };

    int next_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != -1) continue;
        auto seeds = neighbors(i);
        if (seeds.size() < min_samples) {
            labels[i] = 0;
            continue;
        }
        ++next_label;
        labels[i] = next_label;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            std::size_t q = seeds[s];
            if (labels[q] == 0) labels[q] = next_label;  // border point
            if (labels[q] != -1) continue;
            labels[q] = next_label;
            auto qn = neighbors(q);
            if (qn.size() >= min_samples)
                seeds.insert(seeds.end(), qn.begin(), qn.end());
        }
    }
    return labels;
}

std::vector<WardMerge> ward_linkage(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    std::vector<WardMerge> merges;
    if (n < 2) return merges;

    // Active cluster ids; cluster i < n is the singleton for point i,
    // cluster n + m is the result of merge m.
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
    std::vector<std::size_t> sizes(n, 1);
    std::map<std::pair<std::size_t, std::size_t>, double> dist;
    auto key = [](std::size_t a, std::size_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[key(i, j)] = euclidean_distance(points[i], points[j]);

    sizes.resize(2 * n - 1, 0);
    while (active.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double d = dist.at(key(active[i], active[j]));
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        std::size_t a = active[bi], b = active[bj];
        std::size_t merged = n + merges.size();
        merges.push_back({a, b, best});
        sizes[merged] = sizes[a] + sizes[b];

        // Lance-Williams Ward update against every other active cluster.
        for (std::size_t i = 0; i < active.size(); ++i) {
            std::size_t c = active[i];
            if (c == a || c == b) continue;
            double dac = dist.at(key(a, c));
            double dbc = dist.at(key(b, c));
            double dab = best;
            double na = static_cast<double>(sizes[a]);
            double nb = static_cast<double>(sizes[b]);
            double nc = static_cast<double>(sizes[c]);
            double nt = na + nb + nc;
            double d2 = ((na + nc) * dac * dac + (nb + nc) * dbc * dbc - nc * dab * dab) / nt;
            dist[key(merged, c)] = std::sqrt(std::max(0.0, d2));
        }
        active.erase(active.begin() + static_cast<long>(bj));
        active[bi] = merged;
    }
    return merges;
}

std::vector<int> cut_dendrogram(const std::vector<WardMerge>& merges, std::size_t n,
                                std::size_t k) {
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const std::size_t applied = k >= n ? 0 : n - k;
    for (std::size_t m = 0; m < applied && m < merges.size(); ++m) {
        std::size_t root = n + m;
        parent[find(merges[m].a)] = root;
        parent[find(merges[m].b)] = root;
    }
    std::vector<int> labels(n, 0);
    std::map<std::size_t, int> seen;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        auto [it, inserted] = seen.try_emplace(r, static_cast<int>(seen.size()) + 1);
        labels[i] = it->second;
    }
    return labels;
}

double mean_silhouette(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels) {
    const std::size_t n = points.size();
    std::map<int, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters[labels[i]].push_back(i);
    if (clusters.size() < 2) return 0.0;

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& own = clusters.at(labels[i]);
        if (own.size() == 1) continue;  // silhouette 0 for singletons
        double a = 0.0;
        for (std::size_t j : own)
            if (j != i) a += euclidean_distance(points[i], points[j]);
        a /= static_cast<double>(own.size() - 1);

        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, members] : clusters) {
            if (label == labels[i]) continue;
            double d = 0.0;
            for (std::size_t j : members) d += euclidean_distance(points[i], points[j]);
            b = std::min(b, d / static_cast<double>(members.size()));
        }
        double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

}  // namespace atkde
