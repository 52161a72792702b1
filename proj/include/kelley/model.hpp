#pragma once

// Finite set algebras as powersets of atoms: ground sets, bitmask subsets,
// point-mass measures, principal ideals, simple functions and functionals
// given as a maximum over finitely many nonnegative measures.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kelley/error.hpp"
#include "kelley/rational.hpp"

namespace kelley {

/// Largest atom count for which a subset fits a single mask word.
inline constexpr std::size_t kMaxAtoms = 64;
/// Largest atom count for operations that enumerate the whole powerset.
inline constexpr std::size_t kMaxEnumerableAtoms = 20;

class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Subset singleton(std::size_t i) { return Subset(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }
  constexpr Subset complement_in(std::size_t n) const { return Subset(~bits_ & full(n).bits_); }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  constexpr Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }

  constexpr bool operator==(const Subset&) const = default;
  constexpr auto operator<=>(const Subset&) const = default;

  /// Indices of member atoms, ascending.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Calls fn(Subset) for every nonempty subset of `within`, in increasing mask order.
template <class Fn>
void for_each_nonempty_subset(Subset within, Fn&& fn) {
  // Enumerate submasks in increasing order by walking the complement trick.
  const std::uint64_t mask = within.bits();
  std::uint64_t sub = 0;
  do {
    sub = (sub - mask) & mask;
    if (sub != 0) fn(Subset(sub));
  } while (sub != 0);
}

class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels)
      : labels_(std::make_shared<const std::vector<std::string>>(std::move(labels))) {
    if (labels_->empty()) throw Error(ErrorKind::SchemaError, "ground set must have at least one atom");
    if (labels_->size() > kMaxAtoms) throw Error(ErrorKind::SchemaError, "ground set exceeds 64 atoms");
    std::set<std::string_view> seen;
    for (const auto& l : *labels_) {
      if (!seen.insert(l).second) throw Error(ErrorKind::SchemaError, "duplicate atom label \"" + l + "\"");
    }
  }

  /// Atoms labelled "1".."n".
  static GroundSet numbered(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const { return labels_->size(); }
  const std::string& label(std::size_t i) const { return (*labels_)[i]; }
  const std::vector<std::string>& labels() const { return *labels_; }
  Subset full() const { return Subset::full(size()); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = std::find(labels_->begin(), labels_->end(), label);
    if (it == labels_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_->begin());
  }

  Subset subset(std::span<const std::string> members) const {
    Subset s;
    for (const auto& m : members) {
      auto i = index_of(m);
      if (!i) throw Error(ErrorKind::SchemaError, "unknown label \"" + m + "\"");
      s = s | Subset::singleton(*i);
    }
    return s;
  }
  Subset subset(std::initializer_list<std::string> members) const {
    std::vector<std::string> v(members);
    return subset(std::span<const std::string>(v));
  }

  std::string format(Subset s) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i : s.indices()) {
      if (!first) out += ",";
      out += label(i);
      first = false;
    }
    return out + "}";
  }

  bool operator==(const GroundSet& other) const {
    return labels_ == other.labels_ || *labels_ == *other.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

inline void require_same_ground(const GroundSet& a, const GroundSet& b) {
  if (!(a == b)) throw Error(ErrorKind::GroundSetMismatch, "objects live on different ground sets");
}

class SimpleFunction {
 public:
  SimpleFunction(GroundSet ground, std::vector<Rational> values)
      : ground_(std::move(ground)), values_(std::move(values)) {
    if (values_.size() != ground_.size()) throw Error(ErrorKind::SchemaError, "function must assign a value to every atom");
  }

  static SimpleFunction constant(const GroundSet& ground, const Rational& c) {
    return SimpleFunction(ground, std::vector<Rational>(ground.size(), c));
  }
  static SimpleFunction indicator(const GroundSet& ground, Subset a) {
    std::vector<Rational> v(ground.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.contains(i) ? 1 : 0;
    return SimpleFunction(ground, std::move(v));
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  Rational sup() const { return max_of(values_); }
  Rational inf() const { return min_of(values_); }
  /// Maximum over a nonempty subset of atoms.
  Rational sup_over(Subset s) const {
    auto idx = s.indices();
    Rational best = values_[idx.at(0)];
    for (std::size_t i : idx) best = std::max(best, values_[i]);
    return best;
  }

  bool nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
  }
  /// Atoms where *this < other.
  Subset less_than(const SimpleFunction& other) const {
    Subset s;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < other.values_[i]) s = s | Subset::singleton(i);
    }
    return s;
  }

  SimpleFunction operator+(const SimpleFunction& o) const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
    return SimpleFunction(ground_, std::move(v));
  }
  SimpleFunction operator+(const Rational& c) const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + c;
    return SimpleFunction(ground_, std::move(v));
  }
  SimpleFunction operator-() const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
    return SimpleFunction(ground_, std::move(v));
  }
  /// Pointwise product.
  SimpleFunction operator*(const SimpleFunction& o) const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * o.values_[i];
    return SimpleFunction(ground_, std::move(v));
  }
  SimpleFunction operator*(const Rational& c) const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * c;
    return SimpleFunction(ground_, std::move(v));
  }
  /// Pointwise minimum with a constant (f ∧ a).
  SimpleFunction meet(const Rational& a) const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(values_[i], a);
    return SimpleFunction(ground_, std::move(v));
  }

  bool operator==(const SimpleFunction& o) const { return ground_ == o.ground_ && values_ == o.values_; }

 private:
  GroundSet ground_;
  std::vector<Rational> values_;
};

/// Nonnegative point masses on atoms. On a finite powerset this is exactly
/// the cone of finitely additive nonnegative set functions.
class Measure {
 public:
  Measure(GroundSet ground, std::vector<Rational> mass) : ground_(std::move(ground)), mass_(std::move(mass)) {
    if (mass_.size() != ground_.size()) throw Error(ErrorKind::SchemaError, "measure must assign a mass to every atom");
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] < 0) {
        throw Error(ErrorKind::SchemaError, "negative mass " + to_string(mass_[i]) + " on atom \"" + ground_.label(i) + "\"");
      }
    }
  }

  static Measure zero(const GroundSet& ground) { return Measure(ground, std::vector<Rational>(ground.size(), 0)); }
  static Measure dirac(const GroundSet& ground, std::size_t atom) {
    std::vector<Rational> m(ground.size(), 0);
    m.at(atom) = 1;
    return Measure(ground, std::move(m));
  }
  /// Uniform probability on a nonempty subset.
  static Measure uniform(const GroundSet& ground, Subset on) {
    if (on.empty()) throw Error(ErrorKind::ZeroConditioningSet, "uniform measure on the empty set");
    Rational w(1, static_cast<unsigned long>(on.size()));
    std::vector<Rational> m(ground.size(), 0);
    for (std::size_t i : on.indices()) m[i] = w;
    return Measure(ground, std::move(m));
  }
  static Measure uniform(const GroundSet& ground) { return uniform(ground, ground.full()); }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Rational>& masses() const { return mass_; }
  const Rational& operator[](std::size_t i) const { return mass_[i]; }

  Rational of(Subset a) const {
    Rational acc = 0;
    for (std::size_t i : a.indices()) acc += mass_[i];
    return acc;
  }
  Rational total() const { return sum(mass_); }
  bool is_probability() const { return total() == 1; }

  Rational integrate(const SimpleFunction& f) const {
    require_same_ground(ground_, f.ground());
    Rational acc = 0;
    for (std::size_t i = 0; i < mass_.size(); ++i) acc += mass_[i] * f[i];
    return acc;
  }

  Subset support() const {
    Subset s;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] != 0) s = s | Subset::singleton(i);
    }
    return s;
  }

  Measure scaled(const Rational& c) const {
    std::vector<Rational> m(mass_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mass_[i] * c;
    return Measure(ground_, std::move(m));
  }
  Measure operator+(const Measure& o) const {
    require_same_ground(ground_, o.ground_);
    std::vector<Rational> m(mass_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mass_[i] + o.mass_[i];
    return Measure(ground_, std::move(m));
  }

  bool operator==(const Measure& o) const { return ground_ == o.ground_ && mass_ == o.mass_; }

 private:
  GroundSet ground_;
  std::vector<Rational> mass_;
};

/// Σ weights[i] · measures[i].
inline Measure mixture(const GroundSet& ground, std::span<const Measure> measures, std::span<const Rational> weights) {
  std::vector<Rational> m(ground.size(), 0);
  for (std::size_t k = 0; k < measures.size(); ++k) {
    require_same_ground(ground, measures[k].ground());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += weights[k] * measures[k][i];
  }
  return Measure(ground, std::move(m));
}

/// Principal ideal {A : A ⊆ generator}. Improper exactly when the generator is Ω.
class Ideal {
 public:
  Ideal(GroundSet ground, Subset generator) : ground_(std::move(ground)), generator_(generator) {
    if (!generator_.subset_of(ground_.full())) throw Error(ErrorKind::SchemaError, "ideal generator outside the ground set");
  }
  static Ideal trivial(const GroundSet& ground) { return Ideal(ground, Subset{}); }

  const GroundSet& ground() const { return ground_; }
  Subset generator() const { return generator_; }
  /// Complement of the generator: the atoms that carry mass.
  Subset cogenerator() const { return generator_.complement_in(ground_.size()); }
  bool contains(Subset a) const { return a.subset_of(generator_); }
  bool proper() const { return generator_ != ground_.full(); }
  bool is_trivial() const { return generator_.empty(); }

  /// Every member, ∅ first, in increasing mask order.
  std::vector<Subset> members() const {
    std::vector<Subset> out{Subset{}};
    for_each_nonempty_subset(generator_, [&](Subset s) { out.push_back(s); });
    return out;
  }

  bool operator==(const Ideal& o) const { return ground_ == o.ground_ && generator_ == o.generator_; }

 private:
  GroundSet ground_;
  Subset generator_;
};

inline void require_proper(const Ideal& ideal) {
  if (!ideal.proper()) throw Error(ErrorKind::ImproperIdeal, "ideal contains the whole ground set");
}

/// A finite family of nonempty subsets, duplicates collapsed (first
/// occurrence kept). An empty family is representable; intersection-number
/// queries reject it.
class SetSystem {
 public:
  SetSystem(GroundSet ground, std::vector<Subset> family) : ground_(std::move(ground)) {
    std::unordered_set<std::uint64_t> seen;
    for (Subset s : family) {
      if (s.empty()) throw Error(ErrorKind::EmptySetInFamily, "family contains the empty set");
      if (!s.subset_of(ground_.full())) throw Error(ErrorKind::SchemaError, "family member outside the ground set");
      if (seen.insert(s.bits()).second) family_.push_back(s);
    }
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& family() const { return family_; }
  std::size_t size() const { return family_.size(); }
  bool empty() const { return family_.empty(); }
  bool contains(Subset s) const { return std::find(family_.begin(), family_.end(), s) != family_.end(); }

 private:
  GroundSet ground_;
  std::vector<Subset> family_;
};

/// π(f) = max_i m_i(f) over a nonempty list of nonnegative measures.
class VertexFunctional {
 public:
  VertexFunctional(GroundSet ground, std::vector<Measure> vertices)
      : ground_(std::move(ground)), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error(ErrorKind::SchemaError, "functional needs at least one vertex");
    for (const auto& v : vertices_) require_same_ground(ground_, v.ground());
  }

  /// max over the point masses δ_ω, i.e. π(f) = sup f.
  static VertexFunctional sup_functional(const GroundSet& ground) {
    std::vector<Measure> v;
    for (std::size_t i = 0; i < ground.size(); ++i) v.push_back(Measure::dirac(ground, i));
    return VertexFunctional(ground, std::move(v));
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Measure>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  Rational operator()(const SimpleFunction& f) const {
    Rational best = vertices_.front().integrate(f);
    for (const auto& v : vertices_) best = std::max(best, v.integrate(f));
    return best;
  }
  Rational of(Subset a) const {
    Rational best = vertices_.front().of(a);
    for (const auto& v : vertices_) best = std::max(best, v.of(a));
    return best;
  }

  /// Neg(π): sets every vertex assigns zero mass.
  Ideal null_ideal() const {
    Subset charged;
    for (const auto& v : vertices_) charged = charged | v.support();
    return Ideal(ground_, charged.complement_in(ground_.size()));
  }

 private:
  GroundSet ground_;
  std::vector<Measure> vertices_;
};

// ---------------------------------------------------------------------------
// Operations

struct AtomPartition {
  GroundSet atoms;                     ///< one label per block, "{a,b}"
  std::vector<Subset> blocks;          ///< blocks as subsets of the base
  std::vector<std::size_t> atom_of;    ///< base index -> block index
};

/// Atoms of the algebra generated by `generators` inside `base`: points are
/// grouped by their membership pattern across all generators.
inline AtomPartition atoms_from_generators(const GroundSet& base, std::span<const Subset> generators) {
  for (Subset g : generators) {
    if (!g.subset_of(base.full())) throw Error(ErrorKind::SchemaError, "generator outside the base set");
  }
  std::map<std::vector<bool>, std::size_t> block_of_pattern;
  std::vector<Subset> blocks;
  std::vector<std::size_t> atom_of(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<bool> pattern;
    pattern.reserve(generators.size());
    for (Subset g : generators) pattern.push_back(g.contains(i));
    auto [it, inserted] = block_of_pattern.emplace(std::move(pattern), blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second] = blocks[it->second] | Subset::singleton(i);
    atom_of[i] = it->second;
  }
  std::vector<std::string> labels;
  for (Subset b : blocks) labels.push_back(base.format(b));
  return AtomPartition{GroundSet(std::move(labels)), std::move(blocks), std::move(atom_of)};
}

/// Conditional probability m_A(B) = m(A∩B)/m(A).
inline Measure restrict_measure(const Measure& m, Subset a) {
  Rational mass = m.of(a);
  if (mass == 0) throw Error(ErrorKind::ZeroConditioningSet, "conditioning set " + m.ground().format(a) + " has zero mass");
  std::vector<Rational> out(m.ground().size(), 0);
  for (std::size_t i : a.indices()) out[i] = m[i] / mass;
  return Measure(m.ground(), std::move(out));
}

/// Neg(m), generated by the zero-mass atoms.
inline Ideal null_ideal(const Measure& m) {
  return Ideal(m.ground(), m.support().complement_in(m.ground().size()));
}

/// Checks that an explicit collection is a proper ideal and returns its
/// principal form. Failures carry the offending sets as witness.
inline Ideal ideal_validate(const GroundSet& ground, std::span<const Subset> explicit_members) {
  std::set<Subset> members(explicit_members.begin(), explicit_members.end());
  for (Subset s : members) {
    if (!s.subset_of(ground.full())) throw Error(ErrorKind::SchemaError, "collection member outside the ground set");
  }
  if (members.count(ground.full())) {
    throw Error(ErrorKind::NotProper, "collection contains the whole ground set " + ground.format(ground.full()),
                {ground.full().bits()});
  }
  if (!members.count(Subset{})) {
    throw Error(ErrorKind::NotDownClosed, "collection is missing the empty set", {0});
  }
  for (Subset a : members) {
    std::optional<Subset> missing;
    for_each_nonempty_subset(a, [&](Subset s) {
      if (!missing && !members.count(s)) missing = s;
    });
    if (missing) {
      throw Error(ErrorKind::NotDownClosed,
                  ground.format(*missing) + " is a subset of member " + ground.format(a) + " but not a member",
                  {a.bits(), missing->bits()});
    }
  }
  for (auto i = members.begin(); i != members.end(); ++i) {
    for (auto j = std::next(i); j != members.end(); ++j) {
      if (!members.count(*i | *j)) {
        throw Error(ErrorKind::NotUnionClosed,
                    "union of " + ground.format(*i) + " and " + ground.format(*j) + " is not a member",
                    {i->bits(), j->bits()});
      }
    }
  }
  Subset top;
  for (Subset s : members) top = top | s;
  Ideal ideal(ground, top);
  auto expected = ideal.members();
  if (expected.size() != members.size()) {
    for (Subset s : expected) {
      if (!members.count(s)) {
        throw Error(ErrorKind::NotPrincipalComplete, ground.format(s) + " lies below the union but is not a member",
                    {s.bits()});
      }
    }
  }
  return ideal;
}

}  // namespace kelley
