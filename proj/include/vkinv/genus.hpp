#pragma once

// Lower bounds on the genus of a surface carrying a knot, read off from
// the arrow polynomial, the arrow categorification, and graphical
// coefficients of the parity polynomials.

#include "vkinv/algebra.hpp"

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vk {

/// 0, 1, 2 for n = 0, 1, 2; the least g >= 2 with 3g - 3 >= n beyond that.
int genus_schedule(int n);

/// n = largest number of distinct K indices in one monomial.
int genus_bound_from_arrow(const Polynomial& p);
/// Same schedule over the multiple gradings of a Poincare polynomial.
int genus_bound_from_akh(const Polynomial& p);

struct RegistryEntry {
  std::string id;  // canonical flat id, or ids of a product joined by '*'
  std::string alias;
  int genus = 0;
  std::string provenance;
};

class CoefficientRegistry {
 public:
  /// Lines: id <TAB> alias <TAB> genus [<TAB> provenance]; '#' starts a comment.
  static CoefficientRegistry parse(std::istream& in);
  static CoefficientRegistry load(const std::string& path);

  void add(RegistryEntry e);
  const std::vector<RegistryEntry>& entries() const { return entries_; }
  const RegistryEntry* by_id(std::string_view id) const;
  const RegistryEntry* by_alias(std::string_view alias) const;

  /// For parse_poly: maps "D2[1]" to its canonical id, leaving unknown aliases as they are.
  AliasResolver resolver() const;

 private:
  std::vector<RegistryEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> ids_, aliases_;
};

/// Registry key of a product of coefficients.
std::string product_key(std::vector<std::string> ids);

struct ParityBound {
  int bound = 0;
  std::vector<std::string> unknown;  // ids without a registry entry (counted as 0)
};

/// Max over monomials of the genus of their graphical product: the product
/// entry when registered, else the max over the factors.
ParityBound genus_bound_from_parity(const Polynomial& p, const CoefficientRegistry& r);

}  // namespace vk
