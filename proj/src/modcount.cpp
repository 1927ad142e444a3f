#include "detsum/modcount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detsum/ntt.hpp"

namespace detsum {

namespace {

void check_modulus(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("modulus must be positive");
}

/// Occupied residues with their multiplicities, ascending by residue.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sparse_histogram(
    std::span<const Element> values, std::uint64_t m) {
    std::vector<std::uint64_t> residues;
    residues.reserve(values.size());
    for (const Element v : values) residues.push_back(v % m);
    std::sort(residues.begin(), residues.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto r : residues) {
        if (!out.empty() && out.back().first == r) {
            ++out.back().second;
        } else {
            out.emplace_back(r, 1);
        }
    }
    return out;
}

std::uint64_t count_sparse(std::span<const Element> values, std::uint64_t m) {
    const auto hist = sparse_histogram(values, m);
    std::uint64_t total = 0;
    for (const auto& [x, hx] : hist) {
        for (const auto& [y, hy] : hist) {
            const std::uint64_t z = x + y >= m ? x + y - m : x + y;
            const auto it = std::lower_bound(
                hist.begin(), hist.end(), z,
                [](const auto& entry, std::uint64_t key) { return entry.first < key; });
            if (it != hist.end() && it->first == z) total += hx * hy * it->second;
        }
    }
    return total;
}

std::uint64_t count_dense(const std::vector<std::uint64_t>& h, bool use_ntt) {
    const std::size_t m = h.size();
    const auto linear = use_ntt ? convolve_exact(h, h) : convolve_naive(h, h);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < m; ++c) {
        if (h[c] == 0) continue;
        std::uint64_t folded = linear[c];
        if (c + m < linear.size()) folded += linear[c + m];
        total += h[c] * folded;
    }
    return total;
}

}  // namespace

ResidueHistogram residue_histogram(std::span<const Element> values, std::uint64_t m) {
    check_modulus(m);
    ResidueHistogram hist;
    hist.modulus = m;
    hist.counts.assign(m, 0);
    for (const Element v : values) ++hist.counts[v % m];
    return hist;
}

ResidueHistogram residue_histogram(const ThreeSumInstance& inst, std::uint64_t m) {
    return residue_histogram(std::span<const Element>(inst.elements()), m);
}

ResidueHistogram residue_histogram(const MultisetInstance& inst, std::uint64_t m) {
    const auto values = inst.expanded();
    return residue_histogram(std::span<const Element>(values), m);
}

std::uint64_t count_solutions_mod(std::span<const Element> values, std::uint64_t m,
                                  ConvolutionMethod method) {
    check_modulus(m);
    if (values.empty()) return 0;
    if (method == ConvolutionMethod::automatic) {
        const double k = static_cast<double>(values.size());
        const double md = static_cast<double>(m);
        const double sparse_cost = k * k * std::log2(k + 2);
        const double dense_cost = 6.0 * md * std::log2(2 * md + 2);
        method = sparse_cost <= dense_cost || 2 * m - 1 > kMaxNttLength
                     ? ConvolutionMethod::sparse
                     : ConvolutionMethod::ntt;
    }
    switch (method) {
        case ConvolutionMethod::sparse:
            return count_sparse(values, m);
        case ConvolutionMethod::ntt:
            return count_dense(residue_histogram(values, m).counts, true);
        case ConvolutionMethod::naive:
            return count_dense(residue_histogram(values, m).counts, false);
        case ConvolutionMethod::automatic:
            break;
    }
    throw std::logic_error("count_solutions_mod: unreachable");
}

std::uint64_t count_solutions_mod(const ThreeSumInstance& inst, std::uint64_t m,
                                  ConvolutionMethod method) {
    return count_solutions_mod(std::span<const Element>(inst.elements()), m, method);
}

std::uint64_t count_solutions_mod(const MultisetInstance& inst, std::uint64_t m,
                                  ConvolutionMethod method) {
    const auto values = inst.expanded();
    return count_solutions_mod(std::span<const Element>(values), m, method);
}

std::uint64_t count_collisions_mod(std::span<const Element> values, std::uint64_t m) {
    check_modulus(m);
    std::uint64_t total = 0;
    for (const auto& [r, c] : sparse_histogram(values, m)) total += c * c;
    return total;
}

std::uint64_t count_collisions_mod(const ThreeSumInstance& inst, std::uint64_t m) {
    return count_collisions_mod(std::span<const Element>(inst.elements()), m);
}

std::uint64_t count_collisions_mod(const MultisetInstance& inst, std::uint64_t m) {
    const auto values = inst.expanded();
    return count_collisions_mod(std::span<const Element>(values), m);
}

PrimeRange primes_in_range(std::uint64_t low, std::uint64_t high) {
    if (low < 2 || low >= high || high > (std::uint64_t{1} << 32)) {
        throw std::invalid_argument("primes_in_range: need 2 <= L < H <= 2^32");
    }
    PrimeRange range;
    range.low = low;
    range.high = high;

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(high)));
    while (root * root >= high && root > 0) --root;
    while ((root + 1) * (root + 1) < high) ++root;

    std::vector<bool> small_composite(root + 1, false);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (small_composite[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small_composite[j] = true;
    }

    constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;
    std::vector<bool> composite;
    for (std::uint64_t seg_low = low; seg_low < high; seg_low += kSegment) {
        const std::uint64_t seg_high = std::min(high, seg_low + kSegment);
        composite.assign(seg_high - seg_low, false);
        for (const std::uint64_t p : base) {
            std::uint64_t start = std::max(p * p, (seg_low + p - 1) / p * p);
            for (std::uint64_t j = start; j < seg_high; j += p) composite[j - seg_low] = true;
        }
        for (std::uint64_t v = seg_low; v < seg_high; ++v) {
            if (!composite[v - seg_low]) range.primes.push_back(v);
        }
    }
    return range;
}

}  // namespace detsum
