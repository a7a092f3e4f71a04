#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbokt/freemod.hpp"

namespace arbokt {

/// Basis generator of O (+) M_1 (+) ... (+) M_N: homological degree and index within
/// that degree. Gen{0, 0} is the unit 1 of O.
struct Gen {
  int deg = 0;
  std::size_t idx = 0;

  static constexpr Gen unit() { return Gen{0, 0}; }
  bool is_unit() const { return deg == 0; }
  auto operator<=>(const Gen&) const = default;
};

/// Finite O-linear combination of generators (an element of O (+) M_.); no zero values.
using Chain = std::map<Gen, Poly>;

void chain_add(Chain& c, const Gen& g, const Poly& p);
/// c += f * x
void chain_axpy(Chain& c, const Poly& f, const Chain& x);
Chain chain_scale(const Poly& f, const Chain& x);
Chain chain_neg(const Chain& x);
Chain chain_of(const Gen& g, const Poly& p);

class Resolution;

/// Graded-commutative product on generators, extended O-bilinearly. The unit acts as 1.
class DgcaProduct {
 public:
  using Key = std::pair<Gen, Gen>;

  DgcaProduct() = default;
  explicit DgcaProduct(RingPtr ring, std::map<Key, Chain> table = {})
      : ring_(std::move(ring)), table_(std::move(table)) {}

  const RingPtr& ring() const { return ring_; }

  const std::map<Key, Chain>& table() const { return table_; }
  void set(const Gen& a, const Gen& b, Chain value);

  /// a * b on generators: the table entry, else (-1)^{|a||b|} times the swapped entry, else 0.
  Chain multiply(const Gen& a, const Gen& b) const;
  Chain multiply(const Chain& x, const Chain& y) const;

 private:
  RingPtr ring_;
  std::map<Key, Chain> table_;
};

/// Free resolution M_N -> ... -> M_1 -> O of O/I with generator names unique across degrees.
class Resolution {
 public:
  Resolution() = default;
  /// modules[k] and differentials[k] describe degree k+1; d_1 has a single row.
  Resolution(RingPtr ring, std::vector<Poly> ideal, std::vector<FreeModule> modules,
             std::vector<ModuleMap> differentials);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& ideal() const { return ideal_; }
  int length() const { return static_cast<int>(modules_.size()); }
  /// Rank of M_i; rank(0) = 1.
  std::size_t rank(int i) const;
  const FreeModule& module(int i) const { return modules_.at(i - 1); }
  const ModuleMap& d(int i) const { return diffs_.at(i - 1); }
  const std::vector<FreeModule>& modules() const { return modules_; }
  const std::vector<ModuleMap>& differentials() const { return diffs_; }

  bool truncated() const { return truncated_; }
  void set_truncated(bool t) { truncated_ = t; }

  const std::optional<DgcaProduct>& product() const { return product_; }
  void set_product(DgcaProduct p) { product_ = std::move(p); }

  /// All generators of degree 1..N in (degree, index) order.
  std::vector<Gen> generators() const;
  std::vector<Gen> generators(int degree) const;
  /// The generator name, or "1" for the unit.
  std::string name(const Gen& g) const;
  std::optional<Gen> find(const std::string& name) const;

  /// d on a single generator, as a chain of degree deg-1 (d of the unit is 0).
  Chain d(const Gen& g) const;
  /// O-linear extension of d.
  Chain d(const Chain& c) const;

  ModuleElement to_element(const Chain& c, int degree) const;
  Chain from_element(const ModuleElement& v, int degree) const;

  std::string to_string(const Chain& c) const;

 private:
  RingPtr ring_;
  std::vector<Poly> ideal_;
  std::vector<FreeModule> modules_;
  std::vector<ModuleMap> diffs_;
  std::map<std::string, Gen> by_name_;
  std::optional<DgcaProduct> product_;
  bool truncated_ = false;
};

/// Iterated syzygy resolution starting from the given generators of I. Stops when a
/// kernel vanishes; if max_length is reached first the result is marked truncated.
Resolution resolve_ideal(const std::vector<Poly>& gens, int max_length);

/// Koszul complex of gens with the exterior product. Generators theta{i,j,...}.
Resolution build_koszul(const std::vector<Poly>& gens);

/// Taylor complex of the monomial ideal with its product. Generators e{i,j,...}.
Resolution build_taylor(const std::vector<Poly>& monomials);

struct ValidationEntry {
  std::string check;
  int degree = 0;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool passed() const;
  /// The first failing entry, if any.
  std::optional<ValidationEntry> first_failure() const;
};

struct ValidateOptions {
  bool check_exactness = true;
  bool check_product = true;
};

/// Checks d^2 = 0, im d_1 = I, exactness in positive degrees and the product laws.
ValidationReport validate(const Resolution& res, const ValidateOptions& opts = {});

}  // namespace arbokt
