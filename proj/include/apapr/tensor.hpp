#pragma once

#include "apapr/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

enum class Variance : std::uint8_t { Up, Down };

struct TensorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense tensor over a fixed frame of size `dim`, one variance mark per
/// slot, components stored row-major in slot order. The named geometric
/// objects keep the slot order of the written formulas: contravariant
/// slots first, covariant slots after, each left to right.
class Tensor {
 public:
  Tensor(int dim, std::vector<Variance> variance)
      : dim_(dim), variance_(std::move(variance)) {
    if (dim_ <= 0) throw TensorError("tensor dimension must be positive");
    std::size_t size = 1;
    for (std::size_t i = 0; i < variance_.size(); ++i) size *= static_cast<std::size_t>(dim_);
    components_.assign(size, Rational(0));
  }

  static Tensor scalar(int dim, Rational value) {
    Tensor t(dim, {});
    t.components_[0] = std::move(value);
    return t;
  }

  static Tensor vector(int dim) { return Tensor(dim, {Variance::Up}); }
  static Tensor one_form(int dim) { return Tensor(dim, {Variance::Down}); }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }

  int contravariant_rank() const {
    int c = 0;
    for (auto v : variance_)
      if (v == Variance::Up) ++c;
    return c;
  }
  int covariant_rank() const { return rank() - contravariant_rank(); }

  std::size_t size() const { return components_.size(); }

  Rational& component(std::size_t flat) { return components_[flat]; }
  const Rational& component(std::size_t flat) const { return components_[flat]; }

  std::size_t flatten(std::span<const int> idx) const {
    if (idx.size() != variance_.size()) throw TensorError("index rank mismatch");
    std::size_t flat = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (idx[s] < 0 || idx[s] >= dim_) throw TensorError("index out of range");
      flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx[s]);
    }
    return flat;
  }

  void unflatten(std::size_t flat, std::vector<int>& idx) const {
    idx.assign(variance_.size(), 0);
    for (std::size_t s = variance_.size(); s-- > 0;) {
      idx[s] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
  }

  Rational& at(std::span<const int> idx) { return components_[flatten(idx)]; }
  const Rational& at(std::span<const int> idx) const { return components_[flatten(idx)]; }

  template <typename... I>
  Rational& operator()(I... i) {
    const int idx[] = {static_cast<int>(i)...};
    return at(std::span<const int>(idx, sizeof...(I)));
  }
  template <typename... I>
  const Rational& operator()(I... i) const {
    const int idx[] = {static_cast<int>(i)...};
    return at(std::span<const int>(idx, sizeof...(I)));
  }

  const Rational& scalar_value() const {
    if (rank() != 0) throw TensorError("not a rank-0 tensor");
    return components_[0];
  }

  bool is_zero() const {
    for (const auto& c : components_)
      if (c != 0) return false;
    return true;
  }

  /// Visits every index tuple once, in row-major order.
  void for_each(const std::function<void(const std::vector<int>&, const Rational&)>& fn) const {
    std::vector<int> idx;
    for (std::size_t flat = 0; flat < components_.size(); ++flat) {
      unflatten(flat, idx);
      fn(idx, components_[flat]);
    }
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
    return *this;
  }
  Tensor& operator*=(const Rational& s) {
    for (auto& c : components_) c *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) {
    for (auto& c : a.components_) c = -c;
    return a;
  }
  friend Tensor operator*(const Rational& s, Tensor t) { return t *= s; }
  friend Tensor operator*(Tensor t, const Rational& s) { return t *= s; }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim_ == b.dim_ && a.variance_ == b.variance_ && a.components_ == b.components_;
  }

  bool symmetric_in(int slot_a, int slot_b) const { return pair_symmetry(slot_a, slot_b, false); }
  bool antisymmetric_in(int slot_a, int slot_b) const { return pair_symmetry(slot_a, slot_b, true); }

  void require_symmetric(int slot_a, int slot_b, const std::string& what) const {
    if (!symmetric_in(slot_a, slot_b)) throw TensorError(what + ": not symmetric in slots");
  }
  void require_antisymmetric(int slot_a, int slot_b, const std::string& what) const {
    if (!antisymmetric_in(slot_a, slot_b)) throw TensorError(what + ": not antisymmetric in slots");
  }

 private:
  void require_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_ || variance_ != o.variance_) throw TensorError("tensor shape mismatch");
  }

  bool pair_symmetry(int slot_a, int slot_b, bool anti) const {
    if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= rank() || slot_b >= rank())
      throw TensorError("bad slot pair");
    if (variance_[slot_a] != variance_[slot_b]) throw TensorError("slot variance mismatch");
    std::vector<int> idx, swapped;
    for (std::size_t flat = 0; flat < components_.size(); ++flat) {
      unflatten(flat, idx);
      swapped = idx;
      std::swap(swapped[slot_a], swapped[slot_b]);
      const Rational& other = components_[flatten(swapped)];
      if (anti ? (components_[flat] != -other) : (components_[flat] != other)) return false;
    }
    return true;
  }

  int dim_;
  std::vector<Variance> variance_;
  std::vector<Rational> components_;
};

inline Tensor tensor_product(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw TensorError("tensor product: dimension mismatch");
  std::vector<Variance> var = a.variance();
  var.insert(var.end(), b.variance().begin(), b.variance().end());
  Tensor out(a.dim(), var);
  std::size_t bsize = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.component(i) == 0) continue;
    for (std::size_t j = 0; j < bsize; ++j)
      out.component(i * bsize + j) = a.component(i) * b.component(j);
  }
  return out;
}

/// Contracts one Up slot against one Down slot (global slot positions).
inline Tensor contract_slots(const Tensor& t, int slot_a, int slot_b) {
  if (slot_a == slot_b) throw TensorError("contract: identical slots");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  const auto& var = t.variance();
  if (slot_a < 0 || slot_b >= t.rank()) throw TensorError("contract: slot out of range");
  if (var[slot_a] == var[slot_b]) throw TensorError("contract: slots must have opposite variance");

  std::vector<Variance> out_var;
  for (int s = 0; s < t.rank(); ++s)
    if (s != slot_a && s != slot_b) out_var.push_back(var[s]);
  Tensor out(t.dim(), out_var);

  std::vector<int> out_idx, in_idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, out_idx);
    Rational sum(0);
    for (int m = 0; m < t.dim(); ++m) {
      int oi = 0;
      for (int s = 0; s < t.rank(); ++s) {
        if (s == slot_a || s == slot_b)
          in_idx[static_cast<std::size_t>(s)] = m;
        else
          in_idx[static_cast<std::size_t>(s)] = out_idx[static_cast<std::size_t>(oi++)];
      }
      sum += t.at(in_idx);
    }
    out.component(flat) = sum;
  }
  return out;
}

/// Contraction addressed the way the formulas read: `upper` counts Up
/// slots left to right, `lower` counts Down slots.
inline Tensor contract(const Tensor& t, int upper, int lower) {
  int up_pos = -1, down_pos = -1, up_seen = 0, down_seen = 0;
  for (int s = 0; s < t.rank(); ++s) {
    if (t.variance()[static_cast<std::size_t>(s)] == Variance::Up) {
      if (up_seen++ == upper) up_pos = s;
    } else {
      if (down_seen++ == lower) down_pos = s;
    }
  }
  if (up_pos < 0) throw TensorError("contract: no such contravariant slot");
  if (down_pos < 0) throw TensorError("contract: no such covariant slot");
  return contract_slots(t, up_pos, down_pos);
}

/// Precomposes a Down slot with an endomorphism: out(...,x,...) = t(...,e(x),...).
inline Tensor compose_down_slot(const Tensor& t, int slot, const Tensor& endo) {
  if (slot < 0 || slot >= t.rank() || t.variance()[static_cast<std::size_t>(slot)] != Variance::Down)
    throw TensorError("compose_down_slot: slot is not covariant");
  Tensor out(t.dim(), t.variance());
  std::vector<int> idx, src;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    src = idx;
    Rational sum(0);
    for (int m = 0; m < t.dim(); ++m) {
      const Rational& e = endo(m, idx[static_cast<std::size_t>(slot)]);
      if (e == 0) continue;
      src[static_cast<std::size_t>(slot)] = m;
      sum += e * t.at(src);
    }
    out.component(flat) = sum;
  }
  return out;
}

/// Postcomposes an Up slot with an endomorphism: out^k = e^k_m t^m.
inline Tensor compose_up_slot(const Tensor& t, int slot, const Tensor& endo) {
  if (slot < 0 || slot >= t.rank() || t.variance()[static_cast<std::size_t>(slot)] != Variance::Up)
    throw TensorError("compose_up_slot: slot is not contravariant");
  Tensor out(t.dim(), t.variance());
  std::vector<int> idx, src;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    src = idx;
    Rational sum(0);
    for (int m = 0; m < t.dim(); ++m) {
      const Rational& e = endo(idx[static_cast<std::size_t>(slot)], m);
      if (e == 0) continue;
      src[static_cast<std::size_t>(slot)] = m;
      sum += e * t.at(src);
    }
    out.component(flat) = sum;
  }
  return out;
}

enum class SymMode { Symmetric, Antisymmetric };

/// (0,2) -> (0,2): the symmetric or antisymmetric part; the two parts sum
/// back to the input exactly.
inline Tensor sym_alt(const Tensor& t, SymMode mode) {
  if (t.rank() != 2 || t.covariant_rank() != 2) throw TensorError("sym_alt: expects a (0,2) tensor");
  Tensor out(t.dim(), t.variance());
  const Rational half(1, 2);
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j)
      out(i, j) = mode == SymMode::Symmetric ? half * (t(i, j) + t(j, i)) : half * (t(i, j) - t(j, i));
  return out;
}

/// (0,3) -> (0,3): t(x,y,z) + t(y,z,x) + t(z,x,y).
inline Tensor cyclic_sum(const Tensor& t) {
  if (t.rank() != 3 || t.covariant_rank() != 3) throw TensorError("cyclic_sum: expects a (0,3) tensor");
  Tensor out(t.dim(), t.variance());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j)
      for (int k = 0; k < t.dim(); ++k)
        out(i, j, k) = t(i, j, k) + t(j, k, i) + t(k, i, j);
  return out;
}

}  // namespace apapr
