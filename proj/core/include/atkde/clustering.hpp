#pragma once

#include <cstddef>
#include <vector>

namespace atkde {

/// DBSCAN over Euclidean distance. Labels are 1..J in order of first
/// appearance; noise points get label 0 (cannot occur for min_samples == 1).
std::vector<int> dbscan(const std::vector<std::vector<double>>& points, double eps,
                        std::size_t min_samples);

/// One agglomeration step: clusters `a` and `b` (indices into the sequence
/// of clusters, initial singletons 0..n-1, merge i creates cluster n+i).
struct WardMerge {
    std::size_t a = 0;
    std::size_t b = 0;
    double height = 0.0;
};

/// Full Ward-linkage dendrogram (Lance-Williams update on Euclidean
/// distances). Returns n - 1 merges.
std::vector<WardMerge> ward_linkage(const std::vector<std::vector<double>>& points);

/// Flat labels 1..k from the dendrogram by undoing the last k - 1 merges.
std::vector<int> cut_dendrogram(const std::vector<WardMerge>& merges, std::size_t n,
                                std::size_t k);

/// Mean silhouette score over all points; singleton clusters score 0.
double mean_silhouette(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels);

}  // namespace atkde
