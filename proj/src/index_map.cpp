#include <algorithm>
#include <cmath>
#include <map>

#include "assouad/constructions.hpp"
#include "assouad/errors.hpp"

namespace assouad {

std::uint64_t index_map_H(std::uint64_t n) {
  auto k = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (k * k > n) --k;
  while ((k + 1) * (k + 1) <= n) ++k;
  return std::min(n - k * k, (k + 1) * (k + 1) - n);
}

void IndexWalk::extend_to(std::uint64_t n) {
  while (steps_.size() <= n) {
    const std::int64_t s = next_shell_++;
    const auto side = static_cast<std::uint64_t>(s);
    if (s == 0) steps_.push_back({0, 0, 0});
    // sweep of the box; its first point (0,0,-s) is already the last step
    bool first = true;
    std::uint64_t row = 0;
    for (std::int64_t z = -s; z <= s; ++z) {
      const bool y_up = (z + s) % 2 == 0;
      for (std::uint64_t yi = 0; yi <= side; ++yi, ++row) {
        const std::uint64_t y = y_up ? yi : side - yi;
        const bool x_up = row % 2 == 0;
        for (std::uint64_t xi = 0; xi <= side; ++xi) {
          const std::uint64_t x = x_up ? xi : side - xi;
          if (first) {
            first = false;
            continue;
          }
          steps_.push_back({x, y, z});
        }
      }
    }
    // back to (0, 0, -(s+1)) one coordinate at a time
    IndexTriple p = steps_.back();
    while (p.x > 0) {
      --p.x;
      steps_.push_back(p);
    }
    while (p.y > 0) {
      --p.y;
      steps_.push_back(p);
    }
    while (p.z > -(s + 1)) {
      --p.z;
      steps_.push_back(p);
    }
  }
}

IndexTriple IndexWalk::operator()(std::uint64_t n) {
  std::lock_guard<std::mutex> lock(mutex_);
  extend_to(n);
  return steps_[n];
}

IndexTriple index_map_A(std::uint64_t n) {
  static IndexWalk walk;
  return walk(n);
}

IndexTriple index_map_C(std::uint64_t n) { return index_map_A(index_map_H(n)); }

// ---------------------------------------------------------------------------

std::pair<std::uint64_t, std::int64_t> classify_F(const SubsetView& f, std::size_t base) {
  if (!f.contains(base)) throw BasePointMissing();
  if (f.size() < 2) throw SingletonSubset();
  const double delta = diameter(f);
  const double ratio = separation(f) / delta;
  int e = 0, et = 0;
  std::frexp(delta, &e);  // delta in [2^(e-1), 2^e)
  std::frexp(ratio, &et);
  return {static_cast<std::uint64_t>(1 - et), static_cast<std::int64_t>(1 - e)};
}

AsymptoticBlocks asymptotic_blocks(const AsymptoticExampleSpec& spec) {
  if (spec.truncation == 0) throw TruncationTooSmall("truncation must be at least 1");
  if (spec.truncation > 31)
    throw TruncationTooLarge("weights 2^(i^2) overflow doubles beyond 31 blocks");
  if (spec.base >= spec.ambient.size()) throw InvalidArgument("base point out of range");

  std::map<std::pair<std::uint64_t, std::int64_t>, std::vector<std::size_t>> buckets;
  std::vector<SubsetView> sets;
  for (const auto& idx : spec.dictionary) {
    sets.emplace_back(spec.ambient, idx);
    buckets[classify_F(sets.back(), spec.base)].push_back(sets.size() - 1);
  }

  AsymptoticBlocks out;
  for (std::size_t i = 0; i < spec.truncation; ++i) {
    const IndexTriple c = index_map_C(i);
    const auto it = buckets.find({c.y, c.z});
    if (it == buckets.end()) throw BucketUnrealizable(i);
    const auto& list = it->second;
    const SubsetView& g = sets[list[c.x % list.size()]];
    out.blocks.push_back(g);
    out.weights.push_back(std::ldexp(1.0, static_cast<int>(i * i)) / separation(g));
    out.codes.push_back(c);
  }
  return out;
}

namespace {

struct Layout {
  std::vector<long> block;        // -1 for the base point
  std::vector<std::size_t> point;  // ambient index
};

Layout layout_of(const AsymptoticExampleSpec& spec, const AsymptoticBlocks& b) {
  Layout l;
  l.block.push_back(-1);
  l.point.push_back(spec.base);
  for (std::size_t i = 0; i < b.blocks.size(); ++i)
    for (std::size_t p : b.blocks[i].indices())
      if (p != spec.base) {
        l.block.push_back(static_cast<long>(i));
        l.point.push_back(p);
      }
  return l;
}

}  // namespace

FiniteMetricSpace asymptotic_example(const AsymptoticExampleSpec& spec) {
  const AsymptoticBlocks b = asymptotic_blocks(spec);
  const Layout l = layout_of(spec, b);
  const FiniteMetricSpace& q = spec.ambient;
  const std::size_t n = l.block.size();

  // distance from the base point, already weighted
  std::vector<double> to_base(n, 0.0);
  for (std::size_t p = 1; p < n; ++p)
    to_base[p] = b.weights[static_cast<std::size_t>(l.block[p])] * q(l.point[p], spec.base);

  std::vector<double> d(n * n, 0.0);
  double largest = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = 0; r < n; ++r) {
      if (p == r) continue;
      double v;
      if (l.block[p] >= 0 && l.block[p] == l.block[r])
        v = b.weights[static_cast<std::size_t>(l.block[p])] * q(l.point[p], l.point[r]);
      else
        v = to_base[p] + to_base[r];
      d[p * n + r] = v;
      largest = std::max(largest, v);
    }

  std::vector<std::string> labels{q.label(spec.base)};
  for (std::size_t p = 1; p < n; ++p)
    labels.push_back("G" + std::to_string(l.block[p]) + ":" + q.label(l.point[p]));
  return validate_metric(std::move(d), n, std::move(labels),
                         kDefaultTolMetric * std::max(1.0, largest));
}

std::vector<long> asymptotic_block_of(const AsymptoticExampleSpec& spec) {
  return layout_of(spec, asymptotic_blocks(spec)).block;
}

AsymptoticExampleSpec default_asymptotic_spec(std::size_t truncation) {
  std::vector<double> pts{0.0};
  for (int m = 1; m <= 64; ++m) pts.push_back(m / 16.0);
  AsymptoticExampleSpec spec;
  spec.ambient = line_points(pts);
  spec.base = 0;
  spec.truncation = truncation;
  const std::size_t n = pts.size();
  for (std::size_t a = 1; a < n; ++a) {
    spec.dictionary.push_back({0, a});
    for (std::size_t b = a + 1; b < n; ++b) spec.dictionary.push_back({0, a, b});
  }
  return spec;
}

}  // namespace assouad
