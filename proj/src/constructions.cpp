#include "convcode/constructions.hpp"

#include <algorithm>
#include <set>

#include "convcode/error.hpp"

namespace convcode {

namespace {

// Above this many minors the construction-time superregularity check is
// skipped; every scheme here is superregular by construction and the check
// only guards against implementation bugs.
constexpr std::uint64_t kSelfCheckMinorLimit = 2'000'000;

[[noreturn]] void violated(const std::string& what) {
  throw Error(Errc::PreconditionViolated, what);
}

void require_order(const Field& field, const mpz_class& need, std::string_view scheme) {
  if (field.order() < need) {
    throw Error(Errc::SizeExceedsField, std::string(scheme) + " needs q >= " + need.get_str() +
                                            ", got " + field.describe());
  }
}

std::vector<UnchangedBlock> systematic_unchanged(const MergeParams& p) {
  std::vector<UnchangedBlock> out;
  for (std::size_t i = 0; i < p.lambda; ++i) {
    for (std::size_t t = 0; t < p.k_initial; ++t) out.push_back({{i, t}, i * p.k_initial + t});
  }
  return out;
}

void fill_read_set(ConversionPlan& plan) {
  std::set<BlockRef> reads;
  for (const auto& nb : plan.new_blocks) {
    for (const auto& term : nb) reads.insert(term.from);
  }
  plan.read_set.assign(reads.begin(), reads.end());
}

// Column of the initial generator [I | PI] embedded at stripe band `stripe`,
// then projected back to that band: i.e. just the column of [I | PI].
Element generator_entry(const ConvertibleCode& c, std::size_t row, std::size_t block) {
  const std::size_t k = c.params.k_initial;
  if (block < k) return row == block ? c.field.one() : c.field.zero();
  return c.parity_initial(row, block - k);
}

void self_check(const ConvertibleCode& c) {
  const auto& p = c.params;
  if (c.parity_initial.rows() != p.k_initial || c.parity_initial.cols() != p.r_initial ||
      c.parity_final.rows() != p.k_final() || c.parity_final.cols() != p.r_final) {
    throw Error(Errc::DimensionMismatch, "parity matrix shape does not match " + p.to_string());
  }
  for (const Matrix* m : {&c.parity_initial, &c.parity_final}) {
    if (square_minor_count(m->rows(), m->cols()) > kSelfCheckMinorLimit) continue;
    const auto report = check_superregular(*m);
    if (!report.superregular) {
      throw Error(Errc::SingularSubmatrix, "construction produced a parity matrix that is not superregular");
    }
  }
  if (c.plan.new_blocks.size() != p.r_final) {
    throw Error(Errc::SingularSubmatrix, "plan does not create exactly rF new blocks");
  }
  for (std::size_t l = 0; l < p.r_final; ++l) {
    for (std::size_t row = 0; row < p.k_final(); ++row) {
      const std::size_t stripe = row / p.k_initial;
      const std::size_t local = row % p.k_initial;
      Element acc = c.field.zero();
      for (const auto& term : c.plan.new_blocks[l]) {
        if (term.from.stripe == stripe) acc += term.coeff * generator_entry(c, local, term.from.block);
      }
      if (!(acc == c.parity_final(row, l))) {
        throw Error(Errc::SingularSubmatrix, "plan does not reproduce final parity " + std::to_string(l + 1));
      }
    }
  }
}

ConvertibleCode base_code(const MergeParams& p, const Field& field, Scheme scheme) {
  ConvertibleCode c;
  c.params = p;
  c.field = field;
  c.scheme = scheme;
  c.plan.unchanged = systematic_unchanged(p);
  return c;
}

// Plan summing, for each new block, one initial parity per stripe with
// coefficient 1. parity_index(l, i) is the parity column (zero-based) read
// from stripe i for new block l.
template <class ParityIndex>
void sum_plan(ConvertibleCode& c, ParityIndex parity_index) {
  const auto& p = c.params;
  c.plan.new_blocks.assign(p.r_final, {});
  for (std::size_t l = 0; l < p.r_final; ++l) {
    for (std::size_t i = 0; i < p.lambda; ++i) {
      c.plan.new_blocks[l].push_back({{i, p.k_initial + parity_index(l, i)}, c.field.one()});
    }
  }
  fill_read_set(c.plan);
}

Field default_field(const ConstructOptions& opts, const mpz_class& need) {
  return opts.field ? *opts.field : Field::smallest_with_order_at_least(need);
}

}  // namespace

void MergeParams::validate() const {
  if (lambda < 2) throw Error(Errc::InvalidParams, "lambda must be at least 2");
  if (k_initial < 1) throw Error(Errc::InvalidParams, "kI must be at least 1");
}

std::string MergeParams::to_string() const {
  return "(lambda=" + std::to_string(lambda) + ", kI=" + std::to_string(k_initial) +
         ", rI=" + std::to_string(r_initial) + ", rF=" + std::to_string(r_final) + ")";
}

std::vector<std::size_t> ConversionPlan::reads_per_stripe(std::size_t lambda) const {
  std::vector<std::size_t> out(lambda, 0);
  for (const auto& r : read_set) {
    if (r.stripe < lambda) ++out[r.stripe];
  }
  return out;
}

std::string_view scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::General: return "general";
    case Scheme::Hankel1: return "hankel1";
    case Scheme::Hankel2: return "hankel2";
    case Scheme::HankelFamily: return "hankel-s";
    case Scheme::Trivial: return "trivial";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::General, Scheme::Hankel1, Scheme::Hankel2, Scheme::HankelFamily, Scheme::Trivial}) {
    if (scheme_name(s) == name) return s;
  }
  throw Error(Errc::InvalidParams, "unknown scheme '" + std::string(name) + "'");
}

Matrix ConvertibleCode::generator_initial() const {
  return hconcat(Matrix::identity(field, params.k_initial), parity_initial);
}

Matrix ConvertibleCode::generator_final() const {
  return hconcat(Matrix::identity(field, params.k_final()), parity_final);
}

bool same_code(const ConvertibleCode& a, const ConvertibleCode& b) {
  auto same_terms = [](const std::vector<SourceTerm>& x, const std::vector<SourceTerm>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].from != y[i].from || !(x[i].coeff == y[i].coeff)) return false;
    }
    return true;
  };
  if (!(a.params == b.params) || !(a.field == b.field)) return false;
  if (!(a.parity_initial == b.parity_initial) || !(a.parity_final == b.parity_final)) return false;
  if (a.plan.new_blocks.size() != b.plan.new_blocks.size()) return false;
  for (std::size_t l = 0; l < a.plan.new_blocks.size(); ++l) {
    if (!same_terms(a.plan.new_blocks[l], b.plan.new_blocks[l])) return false;
  }
  if (a.plan.read_set != b.plan.read_set || a.plan.unchanged.size() != b.plan.unchanged.size()) return false;
  for (std::size_t i = 0; i < a.plan.unchanged.size(); ++i) {
    if (a.plan.unchanged[i].from != b.plan.unchanged[i].from ||
        a.plan.unchanged[i].position != b.plan.unchanged[i].position) {
      return false;
    }
  }
  return a.hankel == b.hankel && a.hankel_columns == b.hankel_columns;
}

unsigned degree_bound(const MergeParams& p) {
  const long long lam = p.lambda, k = p.k_initial, ri = p.r_initial, rf = p.r_final;
  const long long terms[] = {
      rf * (rf - 1) * (3 * lam * k - rf - 1),
      ri * (ri - 1) * (3 * k - ri - 1),
      k * (k - 1) * (3 * ri - k - 1),
  };
  const long long best = std::max({terms[0], terms[1], terms[2], 0LL});
  return static_cast<unsigned>(best / 6);
}

ConvertibleCode general_construction(const MergeParams& p, std::uint32_t characteristic) {
  p.validate();
  if (p.r_final > std::min(p.r_initial, p.k_initial)) {
    violated("rF <= min(rI, kI) required for general (use trivial otherwise)");
  }
  const unsigned degree = degree_bound(p) + 1;
  const Field field = Field::make(characteristic, degree);
  const Element theta = field.primitive_element();

  ConvertibleCode c = base_code(p, field, Scheme::General);
  c.theta = theta;
  auto power_matrix = [&](std::size_t rows, std::size_t cols) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = theta.pow(static_cast<std::int64_t>(i * j));
    }
    return m;
  };
  c.parity_initial = power_matrix(p.k_initial, p.r_initial);
  c.parity_final = power_matrix(p.k_final(), p.r_final);

  // Band i of column l of PF equals column l of PI scaled by theta^(i*kI*l).
  c.plan.new_blocks.assign(p.r_final, {});
  for (std::size_t l = 0; l < p.r_final; ++l) {
    for (std::size_t i = 0; i < p.lambda; ++i) {
      const auto e = static_cast<std::int64_t>(i * p.k_initial * l);
      c.plan.new_blocks[l].push_back({{i, p.k_initial + l}, theta.pow(e)});
    }
  }
  fill_read_set(c.plan);
  self_check(c);
  return c;
}

namespace {
mpz_class at_least_two(long long v) { return static_cast<long>(std::max(v, 2LL)); }
}  // namespace

mpz_class hankel1_min_order(const MergeParams& p) {
  return at_least_two(static_cast<long long>(std::max(p.n_initial(), p.n_final())) - 1);
}

mpz_class hankel2_min_order(const MergeParams& p) {
  return at_least_two(static_cast<long long>(p.k_initial) * p.r_initial);
}

mpz_class hankel_family_min_order(unsigned s, const MergeParams& p) {
  if (s == 0) return 2;
  return at_least_two(static_cast<long long>(s) * p.k_initial + p.r_initial / s - 1);
}

mpz_class trivial_min_order(const MergeParams& p) {
  return at_least_two(std::max(p.n_initial(), p.n_final()));
}

unsigned hankel_family_max_r_final(unsigned s, const MergeParams& p) {
  if (s == 0 || s < p.lambda) return 0;
  const int rem = static_cast<int>(p.r_initial % s) - static_cast<int>(p.lambda) + 1;
  return (s - p.lambda + 1) * (p.r_initial / s) + static_cast<unsigned>(std::max(rem, 0));
}

ConvertibleCode hankel1(const MergeParams& p, const Field& field) {
  p.validate();
  const std::size_t k = p.k_initial, lam = p.lambda, rf = p.r_final, ri = p.r_initial;
  if (rf > ri / lam) violated("rF <= floor(rI/lambda) required for hankel1");
  const std::size_t width = (lam - 1) * k + rf;  // columns of Q
  if (ri > width) violated("rI <= (lambda-1)kI + rF required for hankel1");
  require_order(field, hankel1_min_order(p), "hankel1");

  const std::size_t m = p.n_final() - 1;
  HankelArray t = build_superregular_hankel(field, m);

  std::vector<bool> used(width, false);
  for (std::size_t l = 0; l < rf; ++l) {
    for (std::size_t i = 0; i < lam; ++i) used[i * k + l] = true;
  }
  std::size_t extra = ri - lam * rf;
  for (std::size_t col = 0; col < width && extra > 0; ++col) {
    if (!used[col]) {
      used[col] = true;
      --extra;
    }
  }
  std::vector<std::size_t> cols;
  for (std::size_t col = 0; col < width; ++col) {
    if (used[col]) cols.push_back(col);
  }

  ConvertibleCode c = base_code(p, field, Scheme::Hankel1);
  c.parity_initial = t.submatrix(0, k, cols);
  c.parity_final = t.submatrix(0, lam * k, 0, rf);
  auto position = [&](std::size_t col) {
    return static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), col) - cols.begin());
  };
  sum_plan(c, [&](std::size_t l, std::size_t i) { return position(i * k + l); });
  c.hankel = std::move(t);
  c.hankel_columns = std::move(cols);
  self_check(c);
  return c;
}

ConvertibleCode hankel2(const MergeParams& p, const Field& field) {
  p.validate();
  const std::size_t k = p.k_initial, lam = p.lambda, rf = p.r_final, ri = p.r_initial;
  if (static_cast<long long>(rf) > static_cast<long long>(ri) - static_cast<long long>(lam) + 1) {
    violated("rF <= rI - lambda + 1 required for hankel2");
  }
  require_order(field, hankel2_min_order(p), "hankel2");

  HankelArray t = build_superregular_hankel(field, k * ri);
  std::vector<std::size_t> cols(ri), fcols(rf);
  for (std::size_t j = 0; j < ri; ++j) cols[j] = j * k;
  for (std::size_t l = 0; l < rf; ++l) fcols[l] = l * k;

  ConvertibleCode c = base_code(p, field, Scheme::Hankel2);
  c.parity_initial = t.submatrix(0, k, cols);
  c.parity_final = t.submatrix(0, lam * k, fcols);
  sum_plan(c, [](std::size_t l, std::size_t i) { return l + i; });
  c.hankel = std::move(t);
  c.hankel_columns = std::move(cols);
  self_check(c);
  return c;
}

ConvertibleCode hankel_family(unsigned s, const MergeParams& p, const Field& field) {
  p.validate();
  if (s < p.lambda || s > p.r_initial) violated("lambda <= s <= rI required for hankel-s");
  if (p.r_final > hankel_family_max_r_final(s, p)) {
    violated("rF <= (s-lambda+1)floor(rI/s) + max((rI mod s)-lambda+1, 0) required for hankel-s");
  }
  require_order(field, hankel_family_min_order(s, p), "hankel-s");

  ConvertibleCode c;
  if (s == p.lambda) {
    c = hankel1(p, field);
  } else if (s == p.r_initial) {
    c = hankel2(p, field);
  } else {
    // Group u of the initial parities occupies array columns u*kI .. u*kI +
    // size(u) - 1; the larger groups come first. A final column starting at
    // group u stacks the same offset of groups u .. u+lambda-1.
    const std::size_t k = p.k_initial, lam = p.lambda, ri = p.r_initial;
    const std::size_t g = ri / s, larger = ri % s;
    if (g + (larger > 0 ? 1 : 0) > k) violated("ceil(rI/s) <= kI required for hankel-s");
    auto group_size = [&](std::size_t u) { return g + (u < larger ? 1 : 0); };
    std::vector<std::size_t> group_start(s + 1, 0);
    for (std::size_t u = 0; u < s; ++u) group_start[u + 1] = group_start[u] + group_size(u);

    HankelArray t = build_superregular_hankel(field, s * k + g - 1);
    std::vector<std::size_t> cols;
    for (std::size_t u = 0; u < s; ++u) {
      for (std::size_t v = 0; v < group_size(u); ++v) cols.push_back(u * k + v);
    }
    struct Start {
      std::size_t group, offset;
    };
    std::vector<Start> finals;
    for (std::size_t u = 0; u + lam <= s && finals.size() < p.r_final; ++u) {
      std::size_t depth = group_size(u);
      for (std::size_t i = 1; i < lam; ++i) depth = std::min(depth, group_size(u + i));
      for (std::size_t v = 0; v < depth && finals.size() < p.r_final; ++v) finals.push_back({u, v});
    }
    std::vector<std::size_t> fcols;
    for (const auto& f : finals) fcols.push_back(f.group * k + f.offset);

    c = base_code(p, field, Scheme::HankelFamily);
    c.parity_initial = t.submatrix(0, k, cols);
    c.parity_final = t.submatrix(0, lam * k, fcols);
    sum_plan(c, [&](std::size_t l, std::size_t i) {
      return group_start[finals[l].group + i] + finals[l].offset;
    });
    c.hankel = std::move(t);
    c.hankel_columns = std::move(cols);
    self_check(c);
  }
  c.scheme = Scheme::HankelFamily;
  c.s = s;
  return c;
}

ConvertibleCode trivial_construction(const MergeParams& p, const Field& field) {
  p.validate();
  require_order(field, trivial_min_order(p), "trivial");
  // Cauchy matrix 1/(x_i - y_j) with x_i, y_j the field elements encoded by
  // 0..rows-1 and rows..rows+cols-1.
  auto cauchy = [&](std::size_t rows, std::size_t cols) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = (field.from_u64(i) - field.from_u64(rows + j)).inv();
      }
    }
    return m;
  };
  ConvertibleCode c = base_code(p, field, Scheme::Trivial);
  c.parity_initial = cauchy(p.k_initial, p.r_initial);
  c.parity_final = cauchy(p.k_final(), p.r_final);
  c.plan.new_blocks.assign(p.r_final, {});
  for (std::size_t l = 0; l < p.r_final; ++l) {
    for (std::size_t row = 0; row < p.k_final(); ++row) {
      c.plan.new_blocks[l].push_back(
          {{row / p.k_initial, row % p.k_initial}, c.parity_final(row, l)});
    }
  }
  fill_read_set(c.plan);
  self_check(c);
  return c;
}

ConvertibleCode restrict_code(const ConvertibleCode& code, unsigned lambda_new, unsigned r_final_new) {
  if (code.scheme == Scheme::General || code.scheme == Scheme::Trivial) {
    throw Error(Errc::NotRestrictable,
                std::string(scheme_name(code.scheme)) + " codes cannot be restricted");
  }
  if (lambda_new < 2 || lambda_new > code.params.lambda) {
    violated("2 <= lambda' <= lambda required for restriction");
  }
  if (r_final_new > code.params.r_final) violated("0 <= rF' <= rF required for restriction");

  ConvertibleCode c = code;
  c.params.lambda = lambda_new;
  c.params.r_final = r_final_new;
  c.parity_final = code.parity_final.block(0, c.params.k_final(), 0, r_final_new);
  c.plan.new_blocks.resize(r_final_new);
  for (auto& nb : c.plan.new_blocks) {
    std::erase_if(nb, [&](const SourceTerm& t) { return t.from.stripe >= lambda_new; });
  }
  c.plan.unchanged = systematic_unchanged(c.params);
  fill_read_set(c.plan);
  self_check(c);
  return c;
}

ConvertibleCode construct(Scheme scheme, const MergeParams& p, const ConstructOptions& opts) {
  p.validate();
  switch (scheme) {
    case Scheme::General: {
      if (opts.field) {
        const Field needed = Field::make(opts.characteristic, degree_bound(p) + 1);
        if (!(*opts.field == needed)) {
          violated("general construction for " + p.to_string() + " needs " + needed.describe() + ", not " +
                   opts.field->describe());
        }
      }
      return general_construction(p, opts.characteristic);
    }
    case Scheme::Hankel1: return hankel1(p, default_field(opts, hankel1_min_order(p)));
    case Scheme::Hankel2: return hankel2(p, default_field(opts, hankel2_min_order(p)));
    case Scheme::HankelFamily:
      return hankel_family(opts.s, p, default_field(opts, hankel_family_min_order(opts.s, p)));
    case Scheme::Trivial: return trivial_construction(p, default_field(opts, trivial_min_order(p)));
  }
  throw Error(Errc::InvalidParams, "unknown scheme");
}

ConvertibleCode construct_auto(const MergeParams& p, const ConstructOptions& opts) {
  p.validate();
  std::vector<std::string> log;
  auto attempt = [&](Scheme scheme, unsigned s, const std::string& label) -> std::optional<ConvertibleCode> {
    ConstructOptions o = opts;
    o.s = s;
    try {
      ConvertibleCode c = construct(scheme, p, o);
      log.push_back(label + ": selected (" + c.field.describe() + ")");
      c.selection = log;
      return c;
    } catch (const Error& e) {
      if (e.code() != Errc::PreconditionViolated && e.code() != Errc::SizeExceedsField) throw;
      log.push_back(label + ": " + e.what());
      return std::nullopt;
    }
  };
  if (p.r_final > p.k_initial) {
    // Hankel plans read rF parities per stripe; reading the kI data blocks is cheaper.
    log.push_back("hankel: rF > kI, parity reads cannot meet the access bound");
  } else {
    if (auto c = attempt(Scheme::Hankel1, 0, "hankel1")) return *c;
    for (unsigned s = p.lambda + 1; s < p.r_initial; ++s) {
      if (p.r_final > hankel_family_max_r_final(s, p)) continue;
      if (auto c = attempt(Scheme::HankelFamily, s, "hankel-s(s=" + std::to_string(s) + ")")) return *c;
    }
    if (auto c = attempt(Scheme::Hankel2, 0, "hankel2")) return *c;
  }
  if (auto c = attempt(Scheme::General, 0, "general")) return *c;
  if (auto c = attempt(Scheme::Trivial, 0, "trivial")) return *c;
  throw Error(Errc::PreconditionViolated, "no scheme applies to " + p.to_string());
}

}  // namespace convcode
