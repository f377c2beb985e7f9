#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/cpmaps.hpp"
#include "tschur/eig.hpp"
#include "tschur/random.hpp"
#include "tschur/rng.hpp"
#include "tschur/schur_tensor.hpp"

// Randomized property campaigns. Each campaign draws seeded instances,
// checks a family of invariants on every one, and tallies per-check
// run/failure counts. The same drivers back the command-line `fuzz`
// subcommand and the acceptance suite, so a campaign is fully determined
// by (seed, instances, size caps): same inputs, same verdict, same counts.

namespace tschur::fuzz {

struct Options {
  std::uint64_t seed = 42;
  std::size_t instances = 100;
  std::size_t max_outer = 0;  // cap on outer sizes; 0 = campaign default
  std::size_t max_block = 0;  // cap on block dimensions; 0 = campaign default
  double rtol = 1e-10;        // forwarded to psd_check
  double atol = 1e-12;
};

struct CheckCounter {
  std::size_t run = 0;
  std::size_t failed = 0;
};

struct Result {
  std::string campaign;
  std::size_t instances = 0;
  std::map<std::string, CheckCounter> checks;  // ordered for stable output
  std::string first_failure;

  void note(const std::string& check, bool ok, std::size_t instance,
            const std::string& detail = "") {
    CheckCounter& c = checks[check];
    ++c.run;
    if (!ok) {
      ++c.failed;
      if (first_failure.empty()) {
        std::ostringstream os;
        os << campaign << " instance " << instance << ": " << check;
        if (!detail.empty()) os << " (" << detail << ")";
        first_failure = os.str();
      }
    }
  }

  std::size_t failures() const {
    std::size_t total = 0;
    for (const auto& [name, c] : checks) total += c.failed;
    return total;
  }

  bool passed() const { return failures() == 0; }
};

namespace detail {

inline std::size_t cap(std::size_t requested, std::size_t fallback) {
  return requested == 0 ? fallback : requested;
}

inline void require_instances(const Options& opts) {
  if (opts.instances == 0)
    throw std::invalid_argument("fuzz: instances must be positive");
}

// Scales to Frobenius norm in (0.5, 1] by an exact power of two. The scaling
// is lossless in binary floating point, so it preserves positivity, every
// bit-exact route identity, and relative spectra, while keeping instance
// magnitudes in a range where absolute tolerances are meaningful.
inline CMatrix pow2_unit(CMatrix a) {
  const double f = a.frobenius_norm();
  if (f == 0.0 || !std::isfinite(f)) return a;
  int e = 0;
  std::frexp(f, &e);  // f = mantissa * 2^e, mantissa in [0.5, 1)
  a *= Complex(std::ldexp(1.0, -e), 0.0);
  return a;
}

inline BlockMatrix pow2_unit(const BlockMatrix& b) {
  return unflatten(pow2_unit(flatten(b)), b.outer_size(), b.block_dim());
}

inline BlockMatrix unit_block_psd(std::size_t n, std::size_t m, std::uint64_t seed) {
  return pow2_unit(random_block_psd(n, m, seed));
}

inline std::string describe(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

// Campaign-distinct salts so different campaigns sharing a user seed still
// draw unrelated instance streams.
enum Salt : std::uint64_t {
  kProp4 = 1,
  kEq3 = 2,
  kCor6 = 3,
  kKraus = 4,
  kCor7 = 5,
  kSchur = 6,
  kRemark8 = 7,
};

inline std::uint64_t instance_seed(const Options& opts, Salt salt, std::size_t t) {
  return derive_seed(derive_seed(opts.seed, salt), t);
}

}  // namespace detail

// Positivity of the tensorial Schur product, plus the compression identity
// that proves it: tensor_schur(r, s) must coincide bit for bit with the
// diagonal compression of the full tensor product outer_tensor(r, s),
// whether the compression is taken by block selection or by conjugating
// with the explicit coisometry V.
inline Result prop4(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 4);
  const std::size_t max_m = detail::cap(opts.max_block, 3);
  Result res;
  res.campaign = "prop4";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kProp4, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t n = 1 + dims.below(max_n);
    const std::size_t p = 1 + dims.below(max_m);
    const std::size_t q = 1 + dims.below(max_m);
    const BlockMatrix r = detail::unit_block_psd(n, p, derive_seed(inst, 1));
    const BlockMatrix s = detail::unit_block_psd(n, q, derive_seed(inst, 2));

    const BlockMatrix ts = tensor_schur(r, s);
    const PsdReport rep = psd_check(flatten(ts), opts.rtol, opts.atol);
    res.note("tensor_schur_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));

    const BlockMatrix full = outer_tensor(r, s);
    res.note("compression_identity_selection", exact_equal(diag_compress(full), ts), t);

    const CMatrix v = build_compression_V(n, p * q);
    const BlockMatrix via_v = unflatten(v * flatten(full) * v.adjoint(), n, p * q);
    res.note("compression_identity_coisometry", exact_equal(via_v, ts), t);
  }
  return res;
}

// The contraction identity: summing all blocks of the tensorial Schur
// product equals compressing it by the stacked column of identities, and
// the contraction of two positives is again positive.
inline Result eq3(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 4);
  const std::size_t max_m = detail::cap(opts.max_block, 3);
  Result res;
  res.campaign = "eq3";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kEq3, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t n = 1 + dims.below(max_n);
    const std::size_t p = 1 + dims.below(max_m);
    const std::size_t q = 1 + dims.below(max_m);
    const BlockMatrix r = detail::unit_block_psd(n, p, derive_seed(inst, 1));
    const BlockMatrix s = detail::unit_block_psd(n, q, derive_seed(inst, 2));
    const std::size_t u = p * q;

    const CMatrix direct = sum_contract(r, s);

    CMatrix ones(n * u, u);  // n stacked copies of the identity
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < u; ++a) ones(i * u + a, a) = Complex(1.0, 0.0);
    const CMatrix contracted = ones.adjoint() * flatten(tensor_schur(r, s)) * ones;

    const double diff = max_abs_diff(direct, contracted);
    res.note("contraction_agreement", diff <= 1e-12, t,
             "max_abs_diff=" + detail::describe(diff));

    const PsdReport rep = psd_check(direct, opts.rtol, opts.atol);
    res.note("contraction_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));
  }
  return res;
}

// Completely positive maps: the block extension of a CP map keeps random
// PSD block matrices PSD, the extension agrees bit for bit with the
// contraction against the map's Choi blocks, and random positivity probes
// stay silent.
inline Result cor6(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 3);
  const std::size_t max_m = detail::cap(opts.max_block, 3);
  Result res;
  res.campaign = "cor6";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kCor6, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t n = 1 + dims.below(max_n);
    const std::size_t d = 1 + dims.below(max_n);
    const std::size_t m = 1 + dims.below(max_m);
    const std::size_t num_kraus = 1 + dims.below(n * d);
    const MatLinearMap phi = random_cp_map(n, d, num_kraus, derive_seed(inst, 1));
    const BlockMatrix r = detail::unit_block_psd(n, m, derive_seed(inst, 2));

    const PsdReport cp = is_cp(phi, opts.rtol, opts.atol);
    res.note("choi_psd", cp.is_psd, t,
             "min_eigenvalue=" + detail::describe(cp.min_eigenvalue));

    const CMatrix extended = extend_apply(phi, r);
    const PsdReport rep = psd_check(extended, opts.rtol, opts.atol);
    res.note("extend_apply_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));

    res.note("extend_matches_contraction", exact_equal(extended, sum_contract(r, choi(phi))), t);

    const auto probe = positive_map_falsify(phi, 10, derive_seed(inst, 3));
    res.note("falsifier_silent_on_cp", !probe.has_value(), t,
             probe ? "min_eigenvalue=" + detail::describe(probe->min_eigenvalue) : "");
  }
  return res;
}

// Kraus extraction round trip: decompose a random CP map, rebuild it from
// the extracted operators, and compare the actions on all matrix units.
inline Result kraus_roundtrip(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 3);
  Result res;
  res.campaign = "kraus_roundtrip";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kKraus, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t n = 1 + dims.below(max_n);
    const std::size_t d = 1 + dims.below(max_n);
    const std::size_t num_kraus = 1 + dims.below(n * d);
    const MatLinearMap phi = random_cp_map(n, d, num_kraus, derive_seed(inst, 1));

    const KrausSet ks = kraus(phi);
    const MatLinearMap back = MatLinearMap::from_kraus(ks);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, (back.action(i, j) - phi.action(i, j)).frobenius_norm());
    res.note("kraus_roundtrip_residual", worst <= 1e-8, t,
             "residual=" + detail::describe(worst));
    res.note("kraus_count_bounded", ks.ops.size() <= n * d, t);
  }
  return res;
}

// Amplified multiplier identity: flattening the grid of levelwise tensorial
// Schur products equals the single tensorial Schur product against the
// all-ones amplification of r, entry for entry; the result stays PSD; and
// the normalized all-ones matrix is an idempotent.
inline Result cor7(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 3);
  const std::size_t max_m = detail::cap(opts.max_block, 2);
  Result res;
  res.campaign = "cor7";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kCor7, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t k = 1 + dims.below(max_n);
    const std::size_t n = 1 + dims.below(max_n);
    const std::size_t p = 1 + dims.below(max_m);
    const std::size_t q = 1 + dims.below(max_m);
    const BlockMatrix r = detail::unit_block_psd(n, p, derive_seed(inst, 1));
    const BlockMatrix s_hat = detail::unit_block_psd(k * n, q, derive_seed(inst, 2));

    const BlockMatrix lhs = hat_flatten(lr_amplified(r, hat_split(s_hat, k)));
    const BlockMatrix rhs = tensor_schur(pi_right(all_ones(k), r), s_hat);
    res.note("amplified_identity", exact_equal(lhs, rhs), t);

    const PsdReport rep = psd_check(flatten(lhs), opts.rtol, opts.atol);
    res.note("amplified_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));

    const CMatrix proj = all_ones(k) * Complex(1.0 / static_cast<double>(k), 0.0);
    const double idem = max_abs_diff(proj * proj, proj);
    res.note("ones_projection_idempotent", idem <= 1e-12, t,
             "max_abs_diff=" + detail::describe(idem));
  }
  return res;
}

// Classical entrywise product of PSD matrices stays PSD (the block_dim = 1
// collapse of the tensorial statement).
inline Result schur_product(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 8);
  Result res;
  res.campaign = "schur_product";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kSchur, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t n = 1 + dims.below(max_n);
    const CMatrix r = detail::pow2_unit(random_psd(n, n, derive_seed(inst, 1)));
    const CMatrix s = detail::pow2_unit(random_psd(n, n, derive_seed(inst, 2)));
    const PsdReport rep = psd_check(schur(r, s), opts.rtol, opts.atol);
    res.note("schur_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));
  }
  return res;
}

// Kronecker products of PSD matrices: positivity, and the spectrum equals
// the multiset of pairwise eigenvalue products.
inline Result remark8(const Options& opts) {
  detail::require_instances(opts);
  const std::size_t max_n = detail::cap(opts.max_outer, 6);
  Result res;
  res.campaign = "remark8";
  res.instances = opts.instances;
  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::uint64_t inst = detail::instance_seed(opts, detail::kRemark8, t);
    Rng dims(derive_seed(inst, 0));
    const std::size_t a = 1 + dims.below(max_n);
    const std::size_t b = 1 + dims.below(max_n);
    const CMatrix r = detail::pow2_unit(random_psd(a, a, derive_seed(inst, 1)));
    const CMatrix s = detail::pow2_unit(random_psd(b, b, derive_seed(inst, 2)));
    const CMatrix k = kron(r, s);

    const PsdReport rep = psd_check(k, opts.rtol, opts.atol);
    res.note("kron_psd", rep.is_psd, t,
             "min_eigenvalue=" + detail::describe(rep.min_eigenvalue));

    const EigResult er = eig_hermitian(r);
    const EigResult es = eig_hermitian(s);
    const EigResult ek = eig_hermitian(k);
    std::vector<double> products;
    products.reserve(a * b);
    for (double lr : er.eigenvalues)
      for (double ls : es.eigenvalues) products.push_back(lr * ls);
    std::sort(products.begin(), products.end());
    double worst = 0.0;
    for (std::size_t idx = 0; idx < products.size(); ++idx)
      worst = std::max(worst, std::abs(products[idx] - ek.eigenvalues[idx]));
    res.note("kron_spectrum_products", worst <= 1e-8, t,
             "max_abs_diff=" + detail::describe(worst));
  }
  return res;
}

// Named suites exposed by the command line: each groups the campaigns that
// exercise one theme. "all" runs everything.
inline std::vector<Result> run_suite(const std::string& name, const Options& opts) {
  detail::require_instances(opts);
  if (name == "prop4") return {prop4(opts), eq3(opts)};
  if (name == "cor6") return {cor6(opts), kraus_roundtrip(opts)};
  if (name == "cor7") return {cor7(opts)};
  if (name == "schur") return {schur_product(opts), remark8(opts)};
  if (name == "all")
    return {prop4(opts), eq3(opts),           cor6(opts),    kraus_roundtrip(opts),
            cor7(opts),  schur_product(opts), remark8(opts)};
  throw std::invalid_argument("unknown suite \"" + name +
                              "\" (expected prop4, cor6, cor7, schur, or all)");
}

}  // namespace tschur::fuzz
