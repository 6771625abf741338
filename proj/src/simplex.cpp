#include <algorithm>

#include "cohw/cosimpl.hpp"

namespace cohw {

SimplexMap coface_map(int n, int i) {
  SimplexMap f;
  for (int j = 0; j < n; ++j) f.push_back(j < i ? j : j + 1);
  return f;
}

SimplexMap codegeneracy_map(int n, int i) {
  SimplexMap f;
  for (int j = 0; j <= n + 1; ++j) f.push_back(j <= i ? j : j - 1);
  return f;
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
  SimplexMap h;
  for (int x : f) h.push_back(g.at(static_cast<size_t>(x)));
  return h;
}

std::vector<SimplexMap> surjections(int n) {
  std::vector<SimplexMap> out;
  for (int k = 0; k <= n; ++k) {
    // Choose which of the n steps go up by one; steps are listed lexicographically.
    SimplexMap s(static_cast<size_t>(n) + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int val) {
      if (pos == n) {
        if (val == k) out.push_back(s);
        return;
      }
      for (int step = 0; step <= 1; ++step) {
        if (val + step > k) continue;
        s[static_cast<size_t>(pos) + 1] = val + step;
        rec(pos + 1, val + step);
      }
    };
    rec(0, 0);
  }
  return out;
}

EpiMono factor(const SimplexMap& f, int n) {
  std::vector<int> image(f.begin(), f.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  EpiMono em;
  for (int x : f) em.epi.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), x) - image.begin()));
  for (int y = 0; y <= n; ++y)
    if (!std::binary_search(image.begin(), image.end(), y)) em.missing.push_back(y);
  return em;
}

std::vector<int> repeats(const SimplexMap& s) {
  std::vector<int> r;
  for (size_t j = 0; j + 1 < s.size(); ++j)
    if (s[j] == s[j + 1]) r.push_back(static_cast<int>(j));
  return r;
}

}  // namespace cohw
