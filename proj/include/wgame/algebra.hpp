#pragma once

// Finite fields (algebras of sets) over {0, ..., n-1}, stored by their atoms.
//
// A finite field is determined by the partition formed by its atoms, so the
// powerset of field elements is never built. Membership, refinement and join
// all work directly on atoms.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wgame/error.hpp"

namespace wgame {

using Element = std::size_t;

class GroundSet {
 public:
  explicit GroundSet(std::size_t size) : size_(size) {
    if (size == 0) throw InvalidArgument("ground set must be nonempty");
  }
  std::size_t size() const noexcept { return size_; }
  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::size_t size_;
};

/// Atom partition of a finite field. Atoms are sorted internally and ordered by
/// their minimum element, so two partitions describe the same field iff they
/// compare equal.
class FinitePartition {
 public:
  /// Throws InvalidArgument unless `atoms` are nonempty, pairwise disjoint and
  /// cover {0, ..., ground_size-1}.
  static FinitePartition from_atoms(std::size_t ground_size,
                                    std::vector<std::vector<Element>> atoms) {
    if (ground_size == 0) throw InvalidArgument("ground set must be nonempty");
    std::vector<std::size_t> owner(ground_size, npos);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].empty()) throw InvalidArgument("atom " + std::to_string(i) + " is empty");
      for (Element e : atoms[i]) {
        if (e >= ground_size)
          throw InvalidArgument("element " + std::to_string(e) + " outside ground set of size " +
                                std::to_string(ground_size));
        if (owner[e] != npos)
          throw InvalidArgument("element " + std::to_string(e) + " belongs to atoms " +
                                std::to_string(owner[e]) + " and " + std::to_string(i));
        owner[e] = i;
      }
    }
    for (Element e = 0; e < ground_size; ++e)
      if (owner[e] == npos)
        throw InvalidArgument("element " + std::to_string(e) + " is not covered by any atom");
    return from_labels(std::span<const std::size_t>(owner));
  }

  /// Elements carrying equal labels share an atom.
  template <typename Label>
  static FinitePartition from_labels(std::span<const Label> labels) {
    if (labels.empty()) throw InvalidArgument("ground set must be nonempty");
    FinitePartition p;
    p.atom_of_.resize(labels.size());
    std::unordered_map<Label, std::size_t> index;
    for (Element e = 0; e < labels.size(); ++e) {
      auto [it, fresh] = index.try_emplace(labels[e], p.atoms_.size());
      if (fresh) p.atoms_.emplace_back();
      p.atoms_[it->second].push_back(e);
      p.atom_of_[e] = it->second;
    }
    return p;
  }

  template <typename Label>
  static FinitePartition from_labels(const std::vector<Label>& labels) {
    return from_labels(std::span<const Label>(labels));
  }

  std::size_t ground_size() const noexcept { return atom_of_.size(); }
  GroundSet ground() const { return GroundSet(ground_size()); }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<std::vector<Element>>& atoms() const noexcept { return atoms_; }
  std::span<const Element> atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t atom_of(Element e) const { return atom_of_.at(e); }
  std::span<const std::size_t> labels() const noexcept { return atom_of_; }

  friend bool operator==(const FinitePartition& a, const FinitePartition& b) {
    return a.atom_of_ == b.atom_of_;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  FinitePartition() = default;

  std::vector<std::vector<Element>> atoms_;
  std::vector<std::size_t> atom_of_;
};

inline FinitePartition trivial(GroundSet ground) {
  return FinitePartition::from_labels(std::vector<int>(ground.size(), 0));
}

inline FinitePartition complete(GroundSet ground) {
  std::vector<std::size_t> labels(ground.size());
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return FinitePartition::from_labels(labels);
}

/// True iff `subset` is a union of atoms, i.e. belongs to the field. Duplicates
/// in `subset` are ignored.
inline bool contains(const FinitePartition& p, std::span<const Element> subset) {
  std::vector<Element> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= p.ground_size())
    throw InvalidArgument("element " + std::to_string(s.back()) + " outside ground set");
  std::vector<std::size_t> hit;
  hit.reserve(s.size());
  for (Element e : s) hit.push_back(p.atom_of(e));
  std::sort(hit.begin(), hit.end());
  for (std::size_t i = 0; i < hit.size();) {
    std::size_t j = i;
    while (j < hit.size() && hit[j] == hit[i]) ++j;
    if (j - i != p.atom(hit[i]).size()) return false;
    i = j;
  }
  return true;
}

inline bool contains(const FinitePartition& p, std::initializer_list<Element> subset) {
  return contains(p, std::span<const Element>(subset.begin(), subset.size()));
}

namespace detail {
inline void require_same_ground(const FinitePartition& a, const FinitePartition& b) {
  if (a.ground_size() != b.ground_size())
    throw InvalidArgument("ground set mismatch: " + std::to_string(a.ground_size()) + " vs " +
                          std::to_string(b.ground_size()));
}
}  // namespace detail

/// True iff every atom of `coarse` is a union of atoms of `fine`.
inline bool is_subfield(const FinitePartition& coarse, const FinitePartition& fine) {
  detail::require_same_ground(coarse, fine);
  for (const auto& atom : fine.atoms()) {
    const std::size_t c = coarse.atom_of(atom.front());
    for (Element e : atom)
      if (coarse.atom_of(e) != c) return false;
  }
  return true;
}

/// Least upper bound: atoms are the nonempty intersections of atoms.
inline FinitePartition join(const FinitePartition& p, const FinitePartition& q) {
  detail::require_same_ground(p, q);
  std::vector<std::size_t> labels(p.ground_size());
  for (Element e = 0; e < labels.size(); ++e) labels[e] = p.atom_of(e) * q.size() + q.atom_of(e);
  return FinitePartition::from_labels(labels);
}

/// Mixed-radix numbering of a finite product set, first coordinate most
/// significant, so index order is lexicographic order on coordinates.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
    strides_.resize(radices_.size());
    std::size_t stride = 1;
    for (std::size_t i = radices_.size(); i-- > 0;) {
      if (radices_[i] == 0) throw InvalidArgument("coordinate sizes must be at least 1");
      strides_[i] = stride;
      if (stride > max_size / radices_[i]) throw BudgetExceeded("product space size overflows");
      stride *= radices_[i];
    }
    size_ = stride;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return radices_.size(); }
  std::size_t radix(std::size_t pos) const { return radices_.at(pos); }
  std::size_t stride(std::size_t pos) const { return strides_.at(pos); }
  const std::vector<std::size_t>& radices() const noexcept { return radices_; }

  std::size_t digit(std::size_t index, std::size_t pos) const {
    return (index / strides_[pos]) % radices_[pos];
  }

  std::size_t encode(std::span<const std::size_t> digits) const {
    if (digits.size() != radices_.size()) throw InvalidArgument("wrong number of coordinates");
    std::size_t index = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] >= radices_[i])
        throw InvalidArgument("coordinate " + std::to_string(i) + " out of range");
      index += digits[i] * strides_[i];
    }
    return index;
  }

  std::vector<std::size_t> decode(std::size_t index) const {
    if (index >= size_) throw InvalidArgument("index out of range");
    std::vector<std::size_t> digits(radices_.size());
    for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = digit(index, i);
    return digits;
  }

 private:
  static constexpr std::size_t max_size = std::size_t{1} << 40;
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// One observed coordinate of a product space. `classes` maps each value of
/// the coordinate to a class label; values with equal labels are not
/// distinguished. An empty `classes` observes the coordinate exactly.
struct Observation {
  std::size_t position = 0;
  std::vector<std::size_t> classes;
};

/// Subfield of the product field generated by the (possibly coarsened)
/// observed coordinates: two points share an atom iff they agree on every
/// observation.
inline FinitePartition cylinder(const MixedRadix& space, std::span<const Observation> observed) {
  for (const auto& o : observed) {
    if (o.position >= space.rank())
      throw InvalidArgument("observed coordinate " + std::to_string(o.position) +
                            " out of range");
    if (!o.classes.empty() && o.classes.size() != space.radix(o.position))
      throw InvalidArgument("coarsening of coordinate " + std::to_string(o.position) +
                            " must give one class per value");
  }
  // Key of a point: mixed-radix number formed by its observed class labels.
  std::vector<std::size_t> class_radix;
  for (const auto& o : observed)
    class_radix.push_back(o.classes.empty()
                              ? space.radix(o.position)
                              : *std::max_element(o.classes.begin(), o.classes.end()) + 1);
  std::vector<std::size_t> labels(space.size());
  for (std::size_t e = 0; e < space.size(); ++e) {
    std::size_t key = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      const std::size_t d = space.digit(e, observed[i].position);
      key = key * class_radix[i] + (observed[i].classes.empty() ? d : observed[i].classes[d]);
    }
    labels[e] = key;
  }
  return FinitePartition::from_labels(labels);
}

inline FinitePartition cylinder(std::span<const std::size_t> sizes,
                                std::span<const std::size_t> observed) {
  MixedRadix space(std::vector<std::size_t>(sizes.begin(), sizes.end()));
  std::vector<Observation> obs;
  for (std::size_t pos : observed) obs.push_back({pos, {}});
  return cylinder(space, obs);
}

inline FinitePartition cylinder(std::initializer_list<std::size_t> sizes,
                                std::initializer_list<std::size_t> observed) {
  return cylinder(std::span<const std::size_t>(sizes.begin(), sizes.size()),
                  std::span<const std::size_t>(observed.begin(), observed.size()));
}

}  // namespace wgame
