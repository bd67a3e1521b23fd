#include "lsa/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace lsa {

namespace {

constexpr Complex kI{0.0, 1.0};

using Prods = std::vector<std::pair<std::pair<int, int>, std::vector<Complex>>>;

// 1-based (i, j) -> coefficient list, as written in the classification lists.
Tensor3 from_products(int n, const Prods& prods) {
  Tensor3 c(n);
  for (const auto& [ij, coeffs] : prods)
    for (int k = 0; k < n; ++k) c(ij.first - 1, ij.second - 1, k) = coeffs[k];
  return c;
}

Complex get(const ParamMap& p, const std::string& name) {
  const auto it = p.find(name);
  if (it == p.end()) throw Error(fmt::format("missing parameter '{}'", name));
  return it->second;
}

Matrix mat2(Complex a, Complex b, Complex d) {
  Matrix m(2, 2);
  m << a, b, b, d;
  return m;
}

Matrix mat3(Complex r11, Complex r12, Complex r13, Complex r22, Complex r23, Complex r33) {
  Matrix m(3, 3);
  m << r11, r12, r13, r12, r22, r23, r13, r23, r33;
  return m;
}

double sign_of(std::string_view branch) { return branch == "-" ? -1.0 : 1.0; }

bool near(Complex a, Complex b) { return std::abs(a - b) < 1e-12; }

void check_constraints(const std::vector<ParamSpec>& specs, const ParamMap& params, std::string_view owner) {
  for (const auto& spec : specs) {
    const Complex v = get(params, spec.name);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(fmt::format("{}: parameter '{}' is not finite", owner, spec.name));
    }
    for (const auto& bad : spec.excluded) {
      if (near(v, bad)) {
        throw Error(fmt::format("{}: parameter '{}' may not equal {}", owner, spec.name,
                                bad.imag() == 0.0 ? fmt::format("{}", bad.real())
                                                  : fmt::format("{}{:+}i", bad.real(), bad.imag())));
      }
    }
  }
}

void check_known(const ParamMap& params, const std::vector<std::string>& allowed, std::string_view owner) {
  for (const auto& [name, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw Error(fmt::format("{}: unknown parameter '{}'", owner, name));
    }
  }
}

std::vector<AlgebraEntry> make_algebras() {
  std::vector<AlgebraEntry> out;
  auto fixed = [&](std::string id, std::string pres, int n, Prods prods) {
    out.push_back({std::move(id), std::move(pres), {}, {}, [n, prods](const ParamMap&) { return from_products(n, prods); },
                   nullptr});
  };
  fixed("AI", "e1e1=e1, e2e2=e2", 2, {{{1, 1}, {1, 0}}, {{2, 2}, {0, 1}}});
  fixed("AII", "e2e2=e2, e1e2=e2e1=e1", 2, {{{2, 2}, {0, 1}}, {{1, 2}, {1, 0}}, {{2, 1}, {1, 0}}});
  fixed("AIII", "e1e1=e1", 2, {{{1, 1}, {1, 0}}});
  fixed("AIV", "all products zero", 2, {});
  fixed("AV", "e1e1=e2", 2, {{{1, 1}, {0, 1}}});
  fixed("NI", "e2e1=-e1, e2e2=-e2", 2, {{{2, 1}, {-1, 0}}, {{2, 2}, {0, -1}}});
  fixed("NII_-1", "e2e1=-e1, e2e2=e1-e2", 2, {{{2, 1}, {-1, 0}}, {{2, 2}, {1, -1}}});
  out.push_back({"NII_k",
                 "e2e1=-e1, e2e2=k e2 (k != -1)",
                 {{"k", {-1.0}}},
                 {},
                 [](const ParamMap& p) {
                   const Complex k = get(p, "k");
                   return from_products(2, {{{2, 1}, {-1, 0}}, {{2, 2}, {0, k}}});
                 },
                 nullptr});
  fixed("NIII", "e1e2=e1, e2e2=e2", 2, {{{1, 2}, {1, 0}}, {{2, 2}, {0, 1}}});
  // e2e1 = (k-1)e1; the form (k-1)e2 is not left-symmetric and contradicts [e1,e2]=e1.
  out.push_back({"NIV_k",
                 "e1e2=k e1, e2e1=(k-1)e1, e2e2=e1+k e2",
                 {{"k", {}}},
                 {},
                 [](const ParamMap& p) {
                   const Complex k = get(p, "k");
                   return from_products(2, {{{1, 2}, {k, 0}}, {{2, 1}, {k - 1.0, 0}}, {{2, 2}, {1, k}}});
                 },
                 nullptr});
  fixed("NV", "e1e1=2e1, e1e2=e2, e2e2=e1", 2, {{{1, 1}, {2, 0}}, {{1, 2}, {0, 1}}, {{2, 2}, {1, 0}}});
  out.push_back({"T1_lambda",
                 "e1e1=(lambda+1)e1, e1e2=e2, e1e3=lambda e3, e2e3=e3e2=e1",
                 {{"lambda", {}}},
                 "0<|lambda|<1, or lambda=exp(i theta) with 0<=theta<=pi",
                 [](const ParamMap& p) {
                   const Complex l = get(p, "lambda");
                   return from_products(3, {{{1, 1}, {l + 1.0, 0, 0}},
                                            {{1, 2}, {0, 1, 0}},
                                            {{1, 3}, {0, 0, l}},
                                            {{2, 3}, {1, 0, 0}},
                                            {{3, 2}, {1, 0, 0}}});
                 },
                 [](const ParamMap& p) {
                   const Complex l = get(p, "lambda");
                   const double r = std::abs(l);
                   if (r > 0.0 && r < 1.0) return true;
                   const double theta = std::arg(l);
                   return std::abs(r - 1.0) < 1e-12 && theta >= -1e-12 && theta <= std::numbers::pi + 1e-12;
                 }});
  fixed("T2", "e1e1=3/2 e1, e1e2=e2, e1e3=1/2 e3, e2e3=e3e2=e1, e3e3=-e2", 3,
        {{{1, 1}, {1.5, 0, 0}}, {{1, 2}, {0, 1, 0}}, {{1, 3}, {0, 0, 0.5}}, {{2, 3}, {1, 0, 0}}, {{3, 2}, {1, 0, 0}},
         {{3, 3}, {0, -1, 0}}});
  return out;
}

std::vector<SolutionFamily> make_families() {
  std::vector<SolutionFamily> out;
  auto add = [&](SolutionFamily f) {
    if (f.branches.empty()) f.branches = {""};
    out.push_back(std::move(f));
  };
  const std::vector<Complex> nz{0.0};

  // Two-dimensional algebras
  add({"SE(AI)-diag", "AI", {}, {}, {{"r11", {}}, {"r22", {}}}, {}, "[[r11,0],[0,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), 0, get(p, "r22")); }});
  add({"SE(AI)-ones", "AI", {}, {}, {{"r11", nz}}, {}, "[[r11,r11],[r11,r11]]",
       [](const ParamMap& p, std::string_view) {
         const Complex a = get(p, "r11");
         return mat2(a, a, a);
       }});
  add({"SE(AII)-offdiag", "AII", {}, {}, {{"r12", {}}, {"r22", {}}}, {}, "[[0,r12],[r12,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(0, get(p, "r12"), get(p, "r22")); }});
  add({"SE(AII)-r11", "AII", {}, {}, {{"r11", nz}}, {}, "[[r11,0],[0,0]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), 0, 0); }});
  add({"SE(AIII)", "AIII", {}, {}, {{"r11", {}}, {"r22", {}}}, {}, "[[r11,0],[0,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), 0, get(p, "r22")); }});
  add({"SE(AIV)", "AIV", {}, {}, {{"r11", {}}, {"r12", {}}, {"r22", {}}}, {}, "[[r11,r12],[r12,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), get(p, "r12"), get(p, "r22")); }});
  add({"SE(AV)", "AV", {}, {}, {{"r12", {}}, {"r22", {}}}, {}, "[[0,r12],[r12,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(0, get(p, "r12"), get(p, "r22")); }});
  add({"SE(NI)", "NI", {}, {}, {{"r11", {}}, {"r22", {}}}, {"+", "-"}, "[[r11,±sqrt(r11 r22)],[±sqrt(r11 r22),r22]]",
       [](const ParamMap& p, std::string_view b) {
         const Complex a = get(p, "r11"), d = get(p, "r22");
         return mat2(a, sign_of(b) * std::sqrt(a * d), d);
       }});
  add({"SE(NII_k)", "NII_k", {}, {{"k", {1.0, -1.0}}}, {{"r22", {}}}, {}, "[[0,0],[0,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(0, 0, get(p, "r22")); }});
  add({"SE(NII_1)-offdiag", "NII_k", {{"k", 1.0}}, {}, {{"r11", {}}, {"r12", {}}}, {}, "[[r11,r12],[r12,0]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), get(p, "r12"), 0); }});
  add({"SE(NII_1)-r22", "NII_k", {{"k", 1.0}}, {}, {{"r22", nz}}, {}, "[[0,0],[0,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(0, 0, get(p, "r22")); }});
  add({"SE(NII_-1)", "NII_-1", {}, {}, {{"r11", {}}}, {}, "[[r11,0],[0,0]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), 0, 0); }});
  add({"SE(NIII)", "NIII", {}, {}, {{"r11", {}}, {"r22", {}}}, {"+", "-"},
       "[[r11,±sqrt(r11 r22)],[±sqrt(r11 r22),r22]]", [](const ParamMap& p, std::string_view b) {
         const Complex a = get(p, "r11"), d = get(p, "r22");
         return mat2(a, sign_of(b) * std::sqrt(a * d), d);
       }});
  add({"SE(NIV_k)", "NIV_k", {}, {{"k", {0.0, 2.0}}}, {{"r11", {}}}, {},
       "[[r11,(1-k)r11],[(1-k)r11,(1-k)^2 r11]]", [](const ParamMap& p, std::string_view) {
         const Complex a = get(p, "r11"), k = get(p, "k");
         return mat2(a, (1.0 - k) * a, (1.0 - k) * (1.0 - k) * a);
       }});
  add({"SE(NIV_2)", "NIV_k", {{"k", 2.0}}, {}, {{"r11", {}}, {"r12", {}}, {"r22", {}}}, {},
       "[[r11,-r12],[-r12,r22]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), -get(p, "r12"), get(p, "r22")); }});
  add({"SE(NV)-r11", "NV", {}, {}, {{"r11", {}}}, {}, "[[r11,0],[0,0]]",
       [](const ParamMap& p, std::string_view) { return mat2(get(p, "r11"), 0, 0); }});
  add({"SE(NV)-double", "NV", {}, {}, {{"r11", nz}}, {}, "[[r11,0],[0,2 r11]]",
       [](const ParamMap& p, std::string_view) {
         const Complex a = get(p, "r11");
         return mat2(a, 0, 2.0 * a);
       }});
  add({"SE(NV)-complex", "NV", {}, {}, {{"r11", nz}}, {"-i", "+i"}, "[[r11,∓i r11],[∓i r11,-r11]]",
       [](const ParamMap& p, std::string_view b) {
         const Complex a = get(p, "r11");
         const Complex i = b == "+i" ? kI : -kI;
         return mat2(a, i * a, -a);
       }});

  // Three-dimensional simple algebras
  const std::vector<ParamSpec> lam{{"lambda", {}}};
  add({"SE(T1_lambda)-r11", "T1_lambda", {}, lam, {{"r11", {}}}, {}, "diag(r11,0,0)",
       [](const ParamMap& p, std::string_view) { return mat3(get(p, "r11"), 0, 0, 0, 0, 0); }});
  add({"SE(T1_lambda)-r22", "T1_lambda", {}, lam, {{"r22", nz}}, {}, "diag(0,r22,0)",
       [](const ParamMap& p, std::string_view) { return mat3(0, 0, 0, get(p, "r22"), 0, 0); }});
  add({"SE(T1_lambda)-r33", "T1_lambda", {}, lam, {{"r33", nz}}, {}, "diag(0,0,r33)",
       [](const ParamMap& p, std::string_view) { return mat3(0, 0, 0, 0, 0, get(p, "r33")); }});
  add({"SE(T1_lambda)-offdiag", "T1_lambda", {}, {{"lambda", {-1.0}}}, {{"r11", nz}}, {},
       "[[r11,0,0],[0,0,(lambda+1)r11],[0,(lambda+1)r11,0]]", [](const ParamMap& p, std::string_view) {
         const Complex a = get(p, "r11"), l = get(p, "lambda");
         return mat3(a, 0, 0, 0, (l + 1.0) * a, 0);
       }});
  const ParamMap lambda_one{{"lambda", 1.0}};
  auto block = [](double s) {
    return [s](const ParamMap& p, std::string_view) {
      const Complex b = get(p, "r22"), d = get(p, "r33");
      const Complex q = s * std::sqrt(b * d);
      return mat3(q, 0, 0, b, q, d);
    };
  };
  // All radicals come from the single root q = sqrt(r12 r13 / 2): r23 = ±i q,
  // r11 = -2 r23, r22 = r12 r23 / r13, r33 = r13 r23 / r12.
  auto full = [](double s) {
    return [s](const ParamMap& p, std::string_view) {
      const Complex b = get(p, "r12"), c = get(p, "r13");
      const Complex r23 = s * kI * std::sqrt(b * c / 2.0);
      return mat3(-2.0 * r23, b, c, b * r23 / c, r23, c * r23 / b);
    };
  };
  add({"SE(T1_1)-block+", "T1_lambda", lambda_one, {}, {{"r22", nz}, {"r33", nz}}, {},
       "[[sqrt(r22 r33),0,0],[0,r22,sqrt(r22 r33)],[0,sqrt(r22 r33),r33]]", block(1.0)});
  add({"SE(T1_1)-full-i", "T1_lambda", lambda_one, {}, {{"r12", nz}, {"r13", nz}}, {},
       "[[-i sqrt(2 r12 r13),r12,r13],[r12,i r12 sqrt(r12/(2 r13)),i sqrt(r12 r13/2)],"
       "[r13,i sqrt(r12 r13/2),i r13 sqrt(r13/(2 r12))]] (radicals from one root of r12 r13/2)",
       full(1.0)});
  add({"SE(T1_1)-block-", "T1_lambda", lambda_one, {}, {{"r22", nz}, {"r33", nz}}, {},
       "[[-sqrt(r22 r33),0,0],[0,r22,-sqrt(r22 r33)],[0,-sqrt(r22 r33),r33]]", block(-1.0)});
  add({"SE(T1_1)-full+i", "T1_lambda", lambda_one, {}, {{"r12", nz}, {"r13", nz}}, {},
       "[[i sqrt(2 r12 r13),r12,r13],[r12,-i r12 sqrt(r12/(2 r13)),-i sqrt(r12 r13/2)],"
       "[r13,-i sqrt(r12 r13/2),-i r13 sqrt(r13/(2 r12))]] (radicals from one root of r12 r13/2)",
       full(-1.0)});
  add({"SE(T2)-r11", "T2", {}, {}, {{"r11", {}}}, {}, "diag(r11,0,0)",
       [](const ParamMap& p, std::string_view) { return mat3(get(p, "r11"), 0, 0, 0, 0, 0); }});
  add({"SE(T2)-r22", "T2", {}, {}, {{"r22", nz}}, {}, "diag(0,r22,0)",
       [](const ParamMap& p, std::string_view) { return mat3(0, 0, 0, get(p, "r22"), 0, 0); }});
  add({"SE(T2)-offdiag", "T2", {}, {}, {{"r11", nz}}, {}, "[[r11,0,0],[0,0,3/2 r11],[0,3/2 r11,0]]",
       [](const ParamMap& p, std::string_view) {
         const Complex a = get(p, "r11");
         return mat3(a, 0, 0, 0, 1.5 * a, 0);
       }});
  return out;
}

Complex random_in_annulus(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> radius(rmin, rmax);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius(rng), angle(rng));
}

Complex sample_avoiding(const ParamSpec& spec, std::mt19937_64& rng) {
  // Keep draws well away from excluded values.
  for (;;) {
    const Complex z = random_in_annulus(rng, 0.2, 1.5);
    const bool ok = std::all_of(spec.excluded.begin(), spec.excluded.end(),
                                [&](const Complex& bad) { return std::abs(z - bad) > 0.1; });
    if (ok) return z;
  }
}

}  // namespace

Catalog::Catalog() : algebras_(make_algebras()), families_(make_families()) {}

const AlgebraEntry& Catalog::algebra(std::string_view id) const {
  const auto it = std::find_if(algebras_.begin(), algebras_.end(), [&](const auto& e) { return e.id == id; });
  if (it == algebras_.end()) throw Error(fmt::format("unknown catalog algebra '{}'", id));
  return *it;
}

const SolutionFamily& Catalog::family(std::string_view id) const {
  const auto it = std::find_if(families_.begin(), families_.end(), [&](const auto& f) { return f.id == id; });
  if (it == families_.end()) throw Error(fmt::format("unknown solution family '{}'", id));
  return *it;
}

std::vector<const SolutionFamily*> Catalog::families_for(std::string_view algebra_id) const {
  std::vector<const SolutionFamily*> out;
  for (const auto& f : families_)
    if (f.algebra_id == algebra_id) out.push_back(&f);
  return out;
}

const Catalog& catalog() {
  static const Catalog instance;
  return instance;
}

CatalogListing list_entries() {
  CatalogListing out;
  for (const auto& a : catalog().algebras()) out.algebra_ids.push_back(a.id);
  for (const auto& f : catalog().families()) out.family_ids.push_back(f.id);
  return out;
}

Algebra instantiate_algebra(std::string_view id, const ParamMap& params) {
  const AlgebraEntry& entry = catalog().algebra(id);
  std::vector<std::string> names;
  for (const auto& p : entry.params) names.push_back(p.name);
  check_known(params, names, id);
  check_constraints(entry.params, params, id);
  return Algebra(entry.generator(params));
}

std::vector<std::string> range_warnings(std::string_view id, const ParamMap& params) {
  const AlgebraEntry& entry = catalog().algebra(id);
  if (!entry.in_soft_range || entry.in_soft_range(params)) return {};
  return {fmt::format("{}: parameters outside the classification range ({}); algebra is still valid", id,
                      entry.soft_range)};
}

namespace {

ParamMap algebra_params_for(const SolutionFamily& fam, const ParamMap& params) {
  ParamMap out = fam.fixed_algebra_params;
  for (const auto& spec : fam.algebra_params) out[spec.name] = get(params, spec.name);
  return out;
}

std::vector<std::string> family_param_names(const SolutionFamily& fam) {
  std::vector<std::string> names;
  for (const auto& p : fam.params) names.push_back(p.name);
  for (const auto& p : fam.algebra_params) names.push_back(p.name);
  return names;
}

}  // namespace

SymmetricTensor instantiate_family(std::string_view family_id, const ParamMap& params, std::string_view branch) {
  const SolutionFamily& fam = catalog().family(family_id);
  check_known(params, family_param_names(fam), family_id);
  check_constraints(fam.params, params, family_id);
  check_constraints(fam.algebra_params, params, family_id);
  // A family with several sign/root choices needs an explicit branch.
  const std::string_view chosen = branch;
  if (std::find(fam.branches.begin(), fam.branches.end(), chosen) == fam.branches.end()) {
    throw Error(branch.empty() ? fmt::format("{}: a branch is required ({})", family_id, fmt::join(fam.branches, ", "))
                               : fmt::format("{}: unknown branch '{}'", family_id, branch));
  }
  ParamMap all = params;
  for (const auto& [k, v] : fam.fixed_algebra_params) all[k] = v;
  return SymmetricTensor(fam.generator(all, chosen));
}

Algebra family_algebra(std::string_view family_id, const ParamMap& params) {
  const SolutionFamily& fam = catalog().family(family_id);
  check_constraints(fam.algebra_params, params, family_id);
  return instantiate_algebra(fam.algebra_id, algebra_params_for(fam, params));
}

ParamMap sample_algebra_params(const AlgebraEntry& entry, std::mt19937_64& rng) {
  ParamMap out;
  for (const auto& spec : entry.params) {
    if (spec.name == "lambda") {
      out[spec.name] = random_in_annulus(rng, 0.1, 0.9);
    } else {
      out[spec.name] = sample_avoiding(spec, rng);
    }
  }
  return out;
}

ParamMap sample_family_params(const SolutionFamily& fam, std::mt19937_64& rng) {
  ParamMap out;
  const AlgebraEntry& entry = catalog().algebra(fam.algebra_id);
  for (const auto& spec : entry.params) {
    if (fam.fixed_algebra_params.contains(spec.name)) continue;
    ParamSpec merged = spec;
    for (const auto& extra : fam.algebra_params)
      if (extra.name == spec.name) merged.excluded.insert(merged.excluded.end(), extra.excluded.begin(), extra.excluded.end());
    out[spec.name] = spec.name == "lambda" ? random_in_annulus(rng, 0.1, 0.9) : sample_avoiding(merged, rng);
  }
  for (const auto& spec : fam.params) out[spec.name] = sample_avoiding(spec, rng);
  return out;
}

namespace {

Complex parse_complex(std::string_view s) {
  // Forms: "1.5", "-2i", "1+2i", "i", "-i", "1e-3-4.5i".
  std::string t(s);
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw Error("empty number");
  auto to_double = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw Error(fmt::format("cannot parse number '{}'", s));
    }
    if (used != part.size()) throw Error(fmt::format("cannot parse number '{}'", s));
    return v;
  };
  if (t.back() != 'i') return {to_double(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(t)};
  return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

}  // namespace

ParamMap parse_params(std::string_view text) {
  ParamMap out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    std::string name(item.substr(0, eq == std::string_view::npos ? 0 : eq));
    name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
    if (eq == std::string_view::npos || name.empty()) throw Error(fmt::format("malformed parameter '{}'", item));
    if (out.count(name)) throw Error(fmt::format("parameter '{}' given twice", name));
    out[name] = parse_complex(item.substr(eq + 1));
    pos = end + 1;
  }
  return out;
}

}  // namespace lsa
