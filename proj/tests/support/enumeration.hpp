#pragma once

// Brute-force nested sums: every tuple (j_1, ..., j_s) over the allowed
// indices is visited and its product is formed term by term.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <vector>

namespace enumeration {

inline double for_each_tuple(const std::vector<int>& allowed, int length,
                             const std::function<double(const std::vector<int>&)>& term) {
  std::vector<std::size_t> pos(static_cast<std::size_t>(length), 0);
  std::vector<int> tuple(static_cast<std::size_t>(length));
  double total = 0.0;
  if (allowed.empty()) return total;
  while (true) {
    for (int t = 0; t < length; ++t) tuple[t] = allowed[pos[t]];
    total += term(tuple);
    int t = length - 1;
    while (t >= 0 && ++pos[t] == allowed.size()) pos[t--] = 0;
    if (t < 0) break;
  }
  return total;
}

inline std::vector<int> excluding(const std::vector<int>& set, std::vector<int> drop) {
  std::vector<int> out;
  for (int j : set) {
    bool keep = true;
    for (int d : drop) keep = keep && j != d;
    if (keep) out.push_back(j);
  }
  return out;
}

inline double gap(int n, int j) { return std::abs(double(n) * n - double(j) * j); }

template <class V>
double L(const V& v, int p, int d, int n, const std::vector<int>& set) {
  return for_each_tuple(excluding(set, {n, -n}), p, [&](const std::vector<int>& i) {
    double prod = v(d - i[0]) / gap(n, i[0]);
    for (int t = 1; t < p; ++t) prod *= v(i[t - 1] - i[t]) / gap(n, i[t]);
    return prod;
  });
}

template <class V>
double R(const V& v, int p, int d, int n, const std::vector<int>& set) {
  return for_each_tuple(excluding(set, {n, -n}), p, [&](const std::vector<int>& i) {
    double prod = v(i[p - 1] - d) / gap(n, i[p - 1]);
    for (int t = 0; t + 1 < p; ++t) prod *= v(i[t] - i[t + 1]) / gap(n, i[t]);
    return prod;
  });
}

template <class Rs>
double sigma(const Rs& r, int n, int s, const std::vector<int>& set) {
  return for_each_tuple(excluding(set, {n, -n}), s, [&](const std::vector<int>& j) {
    double prod = r(n + j[0]) / std::abs(n - j[s - 1]);
    for (int t = 0; t + 1 < s; ++t) {
      prod *= (1.0 / std::abs(n - j[t]) + 1.0 / std::abs(n + j[t + 1])) * r(j[t] + j[t + 1]);
    }
    return prod;
  });
}

template <class Rs>
double sigma1(const Rs& r, int n, int s, int m, const std::vector<int>& set) {
  return for_each_tuple(excluding(set, {n}), s, [&](const std::vector<int>& j) {
    double prod = r(m + j[0]) / std::abs(n - j[0]);
    for (int t = 1; t < s; ++t) prod *= r(j[t - 1] + j[t]) / std::abs(n - j[t]);
    return prod;
  });
}

// The middle denominators |n + j| and the last |n^2 - j^2| vanish at j = -n,
// so both +-n are dropped.
template <class Rs>
double sigma2(const Rs& r, int n, int s, int m, const std::vector<int>& set) {
  return for_each_tuple(excluding(set, {n, -n}), s, [&](const std::vector<int>& j) {
    double prod = r(m + j[0]) * r(j[s - 2] + j[s - 1]) / gap(n, j[s - 1]);
    for (int t = 1; t + 1 < s; ++t) prod *= r(j[t - 1] + j[t]) / std::abs(n + j[t]);
    return prod;
  });
}

}  // namespace enumeration
