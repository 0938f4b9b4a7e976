#include "setconv/norm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "setconv/errors.hpp"

namespace setconv {
namespace {

double eval_block(const NormSpec& n, std::span<const double> a, const double* b) {
  switch (n.kind) {
    case NormSpec::Kind::Euclidean: {
      double s = 0.0;
      for (size_t i = 0; i < a.size(); ++i) {
        const double d = b ? a[i] - b[i] : a[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case NormSpec::Kind::Max: {
      double m = 0.0;
      for (size_t i = 0; i < a.size(); ++i) {
        const double d = b ? a[i] - b[i] : a[i];
        m = std::max(m, std::fabs(d));
      }
      return m;
    }
    case NormSpec::Kind::Product: {
      double m = 0.0;
      size_t off = 0;
      for (const auto& [len, sub] : n.blocks) {
        m = std::max(m, eval_block(sub, a.subspan(off, len), b ? b + off : nullptr));
        off += static_cast<size_t>(len);
      }
      return m;
    }
  }
  return 0.0;
}

}  // namespace

NormSpec NormSpec::product(std::vector<std::pair<int, NormSpec>> blocks) {
  if (blocks.empty()) throw ValidationError("product norm requires at least one block");
  for (const auto& [len, sub] : blocks) {
    if (len <= 0) throw ValidationError("product norm block size must be positive");
    if (sub.dimension() >= 0 && sub.dimension() != len)
      throw ValidationError("product norm sub-block dimension mismatch");
  }
  NormSpec n;
  n.kind = Kind::Product;
  n.blocks = std::move(blocks);
  return n;
}

int NormSpec::dimension() const {
  if (kind != Kind::Product) return -1;
  int d = 0;
  for (const auto& [len, sub] : blocks) d += len;
  return d;
}

void NormSpec::check_dimension(int d, const char* where) const {
  const int want = dimension();
  if (want >= 0 && want != d)
    throw ValidationError(std::string(where) + ": norm expects dimension " +
                          std::to_string(want) + ", got " + std::to_string(d));
}

double NormSpec::operator()(std::span<const double> v) const {
  check_dimension(static_cast<int>(v.size()), "norm");
  return eval_block(*this, v, nullptr);
}

double NormSpec::distance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != b.size())
    throw ValidationError("norm distance: operand dimensions differ");
  check_dimension(static_cast<int>(a.size()), "norm distance");
  return eval_block(*this, a, b.data());
}

}  // namespace setconv
