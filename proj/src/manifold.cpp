#include "betahull/manifold.hpp"

#include "betahull/errors.hpp"

namespace betahull {

namespace {

std::string block_name(const BuildingBlock& b, std::size_t index) {
  return to_string(b.kind) + " summand " + std::to_string(index);
}

CohomologyClass unit(std::size_t dim, std::size_t i) {
  CohomologyClass a(Vector<Rational>(dim, Rational(0)));
  a.coords[i] = 1;
  return a;
}

}  // namespace

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::GeneralType: return "general_type";
    case BlockKind::CP2bar: return "cp2bar";
    case BlockKind::K3: return "k3";
    case BlockKind::T4: return "t4";
    case BlockKind::ThreeManifoldTimesCircle: return "n_times_s1";
  }
  return "unknown";
}

BuildingBlock BuildingBlock::general_type(long c1sq, long chi, long tau, long b_plus, bool h20_odd,
                                          bool simply_connected, std::size_t count) {
  BuildingBlock b;
  b.kind = BlockKind::GeneralType;
  b.c1sq = c1sq;
  b.chi = chi;
  b.tau = tau;
  b.b_plus = b_plus;
  b.h20_odd = h20_odd;
  b.simply_connected = simply_connected;
  b.multiplicity = count;
  return b;
}

BuildingBlock BuildingBlock::cp2bar(std::size_t count) {
  BuildingBlock b;
  b.kind = BlockKind::CP2bar;
  b.multiplicity = count;
  return b;
}

BuildingBlock BuildingBlock::k3(std::size_t count) {
  BuildingBlock b;
  b.kind = BlockKind::K3;
  b.multiplicity = count;
  return b;
}

BuildingBlock BuildingBlock::t4(std::size_t count) {
  BuildingBlock b;
  b.kind = BlockKind::T4;
  b.multiplicity = count;
  return b;
}

BuildingBlock BuildingBlock::three_manifold_times_circle(long b1, std::size_t count) {
  BuildingBlock b;
  b.kind = BlockKind::ThreeManifoldTimesCircle;
  b.b1 = b1;
  b.multiplicity = count;
  return b;
}

void BuildingBlock::validate() const {
  if (multiplicity == 0) throw InputError(to_string(kind) + ": count must be positive");
  if (kind == BlockKind::GeneralType) {
    if (c1sq < 1) throw InputError("general_type: c1sq must be >= 1");
    if (c1sq != 2 * chi + 3 * tau) throw InputError("general_type: c1sq must equal 2 chi + 3 tau");
    if (b_plus < 2) throw InputError("general_type: b_plus must be >= 2");
  }
  if (kind == BlockKind::ThreeManifoldTimesCircle && b1 < 0) throw InputError("n_times_s1: b1 must be >= 0");
}

long BuildingBlock::euler() const {
  switch (kind) {
    case BlockKind::GeneralType: return chi;
    case BlockKind::CP2bar: return 3;
    case BlockKind::K3: return 24;
    case BlockKind::T4: return 0;
    case BlockKind::ThreeManifoldTimesCircle: return 0;
  }
  return 0;
}

long BuildingBlock::signature() const {
  switch (kind) {
    case BlockKind::GeneralType: return tau;
    case BlockKind::CP2bar: return -1;
    case BlockKind::K3: return -16;
    default: return 0;
  }
}

long BuildingBlock::positive() const {
  switch (kind) {
    case BlockKind::GeneralType: return b_plus;
    case BlockKind::CP2bar: return 0;
    case BlockKind::K3: return 3;
    case BlockKind::T4: return 3;
    case BlockKind::ThreeManifoldTimesCircle: return b1;  // b2(N x S1) = 2 b1(N), tau = 0
  }
  return 0;
}

std::size_t ManifoldModel::summand_count() const {
  std::size_t n = 0;
  for (const auto& b : summands) n += b.multiplicity;
  return n;
}

std::size_t ManifoldModel::count(BlockKind kind) const {
  std::size_t n = 0;
  for (const auto& b : summands)
    if (b.kind == kind) n += b.multiplicity;
  return n;
}

ManifoldModel connected_sum(const std::vector<BuildingBlock>& blocks) {
  if (blocks.empty()) throw InputError("connected sum needs at least one summand");
  ManifoldModel m;
  m.summands = blocks;
  long n = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    b.validate();
    const long k = static_cast<long>(b.multiplicity);
    n += k;
    m.chi += k * b.euler();
    m.tau += k * b.signature();
    m.b_plus += k * b.positive();
  }
  m.chi -= 2 * (n - 1);

  if (m.b_plus < 2)
    m.hypothesis_warnings.push_back("b_plus = " + std::to_string(m.b_plus) +
                                    " < 2: monopole classes are chamber-dependent and not modelled");
  const std::size_t g = m.count(BlockKind::GeneralType);
  if (g > 4) m.hypothesis_warnings.push_back(std::to_string(g) + " general-type summands; the sign-expansion rule is only known for up to 4");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.kind != BlockKind::GeneralType) continue;
    if (!b.h20_odd) m.hypothesis_warnings.push_back(block_name(b, i) + " has even h20");
    if (!b.simply_connected && g > 1) m.hypothesis_warnings.push_back(block_name(b, i) + " is not simply connected");
  }
  return m;
}

GeneratedConfiguration monopole_configuration(const ManifoldModel& model, const AmbientExtension& extension) {
  const std::size_t g = model.count(BlockKind::GeneralType);
  const std::size_t k = model.count(BlockKind::CP2bar);
  const std::size_t total = model.summand_count();

  std::vector<Rational> diag;
  std::vector<std::size_t> c1_slots;
  std::vector<long> c1_values;
  std::vector<std::size_t> e_slots;
  std::string ambient;
  GeneratedConfiguration out{MonopoleConfiguration::empty(QuadraticSpace::diagonal({Rational(1)})), {}, {}, {}};

  auto append_extension = [&](std::vector<Rational>& d) {
    for (std::size_t i = 0; i < extension.extra_plus; ++i) d.push_back(1);
    for (std::size_t i = 0; i < extension.extra_minus; ++i) d.push_back(-1);
    if (extension.extra_plus) ambient += " + <1>^" + std::to_string(extension.extra_plus);
    if (extension.extra_minus) ambient += " + <-1>^" + std::to_string(extension.extra_minus);
  };

  if (g >= 1 && g + k == total) {
    if (g > 4) throw UnsupportedModelError("no monopole-class rule for more than 4 general-type summands");
    for (const auto& b : model.summands) {
      if (b.kind != BlockKind::GeneralType) continue;
      for (std::size_t r = 0; r < b.multiplicity; ++r) {
        c1_slots.push_back(diag.size());
        c1_values.push_back(b.c1sq);
        diag.push_back(b.c1sq);
        diag.push_back(-1);
        if (!ambient.empty()) ambient += " + ";
        ambient += "[[" + std::to_string(b.c1sq) + ",0],[0,-1]]";
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      e_slots.push_back(diag.size());
      diag.push_back(-1);
    }
    if (k) ambient += " + <-1>^" + std::to_string(k);
    append_extension(diag);
    const QuadraticSpace space = QuadraticSpace::diagonal(diag);
    std::vector<CohomologyClass> base;
    Rational known = 0;
    for (std::size_t i = 0; i < c1_slots.size(); ++i) {
      base.push_back(unit(diag.size(), c1_slots[i]));
      known += c1_values[i];
    }
    for (std::size_t s : e_slots) base.push_back(unit(diag.size(), s));
    out.cfg = MonopoleConfiguration::zonotope(space, std::move(base));
    out.known_beta = known;
    out.provenance = g == 1 ? "blow-up of a general-type surface: +-c1(X) +- E_1 ... +- E_k"
                            : "connected sum of " + std::to_string(g) +
                                  " general-type surfaces: +-c1(X_1) ... +-c1(X_g) +- E_1 ... +- E_k";
    out.ambient = ambient;
    return out;
  }

  if (total == 1 && (model.count(BlockKind::K3) == 1 || model.count(BlockKind::T4) == 1)) {
    diag = {1, -1};
    ambient = "[[1,0],[0,-1]]";
    append_extension(diag);
    out.cfg = MonopoleConfiguration::zonotope(QuadraticSpace::diagonal(diag), {});
    out.known_beta = Rational(0);
    out.provenance = (model.count(BlockKind::K3) ? std::string("k3") : std::string("t4")) +
                     ": the only monopole class is 0";
    out.ambient = ambient;
    return out;
  }

  if (total == 1 && model.count(BlockKind::ThreeManifoldTimesCircle) == 1) {
    const long b1 = model.summands.front().b1;
    // b1 hyperbolic planes; the classes pulled back from N span an
    // isotropic subspace, one direction per plane.
    DenseMatrix<Rational> gram;
    std::vector<CohomologyClass> base;
    const std::size_t planes = static_cast<std::size_t>(b1);
    const std::size_t dim = std::max<std::size_t>(2 * planes + extension.extra_plus + extension.extra_minus, 1);
    gram = DenseMatrix<Rational>(dim, dim);
    for (std::size_t i = 0; i < planes; ++i) {
      gram(2 * i, 2 * i + 1) = 1;
      gram(2 * i + 1, 2 * i) = 1;
      base.push_back(unit(dim, 2 * i));
    }
    for (std::size_t i = 0; i < extension.extra_plus; ++i) gram(2 * planes + i, 2 * planes + i) = 1;
    for (std::size_t i = 0; i < extension.extra_minus; ++i)
      gram(2 * planes + extension.extra_plus + i, 2 * planes + extension.extra_plus + i) = -1;
    std::vector<std::string> parts;
    if (planes) parts.push_back("[[0,1],[1,0]]^" + std::to_string(planes));
    if (extension.extra_plus) parts.push_back("<1>^" + std::to_string(extension.extra_plus));
    if (extension.extra_minus) parts.push_back("<-1>^" + std::to_string(extension.extra_minus));
    if (parts.empty()) parts.push_back("[[0]]");
    for (const auto& p : parts) ambient += (ambient.empty() ? "" : " + ") + p;
    QuadraticSpace space(std::move(gram));
    out.cfg = planes ? MonopoleConfiguration::zonotope(space, std::move(base)) : MonopoleConfiguration::empty(space);
    out.known_beta = Rational(0);
    out.provenance = "three-manifold times circle: isotropic classes pulled back from N";
    out.ambient = ambient;
    return out;
  }

  std::string kinds;
  for (const auto& b : model.summands) kinds += (kinds.empty() ? "" : ", ") + to_string(b.kind);
  throw UnsupportedModelError("no monopole-class rule for the connected sum [" + kinds + "]");
}

}  // namespace betahull
