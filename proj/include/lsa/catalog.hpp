#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lsa/s_equation.hpp"

namespace lsa {

using ParamMap = std::map<std::string, Complex>;

struct ParamSpec {
  std::string name;
  std::vector<Complex> excluded;  // values rejected by instantiation
};

struct AlgebraEntry {
  std::string id;
  std::string presentation;  // nonzero products, human readable
  std::vector<ParamSpec> params;
  /// Non-redundancy range of the classification; violations only warn.
  std::string soft_range;
  std::function<Tensor3(const ParamMap&)> generator;
  std::function<bool(const ParamMap&)> in_soft_range;
};

struct SolutionFamily {
  std::string id;
  std::string algebra_id;
  /// Algebra parameters pinned by this family (e.g. k = 1 for SE(NII_1)).
  ParamMap fixed_algebra_params;
  /// Constraints on the remaining algebra parameters.
  std::vector<ParamSpec> algebra_params;
  /// Free parameters of the matrix; names are matrix entries like "r11".
  std::vector<ParamSpec> params;
  /// Sign / root choices; a single empty string when there is none.
  std::vector<std::string> branches;
  std::string formula;
  std::function<Matrix(const ParamMap&, std::string_view branch)> generator;
};

class Catalog {
 public:
  Catalog();

  const std::vector<AlgebraEntry>& algebras() const { return algebras_; }
  const std::vector<SolutionFamily>& families() const { return families_; }

  const AlgebraEntry& algebra(std::string_view id) const;
  const SolutionFamily& family(std::string_view id) const;
  std::vector<const SolutionFamily*> families_for(std::string_view algebra_id) const;

 private:
  std::vector<AlgebraEntry> algebras_;
  std::vector<SolutionFamily> families_;
};

/// The built-in registry (initialized once, read-only).
const Catalog& catalog();

struct CatalogListing {
  std::vector<std::string> algebra_ids;
  std::vector<std::string> family_ids;
};

CatalogListing list_entries();

/// Throws on missing, unknown or excluded parameters.
Algebra instantiate_algebra(std::string_view id, const ParamMap& params = {});

/// Warnings for parameters outside the classification's non-redundancy range.
std::vector<std::string> range_warnings(std::string_view id, const ParamMap& params);

/// `params` holds the family parameters plus any algebra parameters the family leaves free.
SymmetricTensor instantiate_family(std::string_view family_id, const ParamMap& params, std::string_view branch = "");

/// The algebra a family lives in, with pinned parameters applied.
Algebra family_algebra(std::string_view family_id, const ParamMap& params = {});

/// Random parameters satisfying the family's constraints (and its algebra's).
ParamMap sample_family_params(const SolutionFamily& family, std::mt19937_64& rng);
ParamMap sample_algebra_params(const AlgebraEntry& entry, std::mt19937_64& rng);

/// Parses "r11=1,r22=2+0.5i" style assignments.
ParamMap parse_params(std::string_view text);

}  // namespace lsa
