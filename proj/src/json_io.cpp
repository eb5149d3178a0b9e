#include "collig/json_io.hpp"

namespace collig {

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw InputError("unknown mode \"" + s + "\" (want exact or float)");
}

Flavor parse_flavor(const std::string& s) {
  if (s == "general") return Flavor::general;
  if (s == "invertible") return Flavor::invertible;
  if (s == "unitary") return Flavor::unitary;
  throw InputError("unknown flavor \"" + s +
                   "\" (want general, invertible or unitary)");
}

Json scalar_to_json(const ExactScalar& v) { return format_exact(v); }

Json scalar_to_json(const Cx& v) { return Json::array({v.real(), v.imag()}); }

ExactScalar exact_scalar_from_json(const Json& j) {
  if (!j.is_string())
    throw InputError("exact entries must be strings like \"3/2+1/4*i\"");
  return parse_exact(j.get<std::string>());
}

Cx float_scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw InputError("float entries must be [re, im] number pairs");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

namespace {

template <class F>
Json mat_to_json_impl(const Mat<F>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F, class ParseEntry>
Mat<F> mat_from_json_impl(const Json& j, ParseEntry parse_entry) {
  if (!j.is_array() || j.empty())
    throw InputError("matrix document must be a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array())
    throw InputError("matrix rows must be arrays");
  const int cols = static_cast<int>(j[0].size());
  Mat<F> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw InputError("matrix rows must all have the same length");
    for (int c = 0; c < cols; ++c) m.at(i, c) = parse_entry(j[i][c]);
  }
  return m;
}

int require_int(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw InputError(std::string("colligation document needs integer \"") +
                     field + "\"");
  return j[field].get<int>();
}

std::string require_str(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw InputError(std::string("colligation document needs string \"") +
                     field + "\"");
  return j[field].get<std::string>();
}

template <class F>
Json colligation_to_json_impl(const Colligation<F>& C, Mode mode) {
  Json j;
  j["alpha"] = C.shape.alpha;
  j["m"] = C.shape.m;
  j["N"] = C.shape.N;
  j["mode"] = mode_name(mode);
  j["flavor"] = flavor_name(C.flavor);
  j["entries"] = mat_to_json_impl(C.g);
  return j;
}

}  // namespace

Json mat_to_json(const Mat<ExactScalar>& m) { return mat_to_json_impl(m); }
Json mat_to_json(const Mat<Cx>& m) { return mat_to_json_impl(m); }

Mat<ExactScalar> exact_mat_from_json(const Json& j) {
  return mat_from_json_impl<ExactScalar>(j, exact_scalar_from_json);
}

Mat<Cx> float_mat_from_json(const Json& j) {
  return mat_from_json_impl<Cx>(j, float_scalar_from_json);
}

Json colligation_to_json(const Colligation<ExactScalar>& C) {
  return colligation_to_json_impl(C, Mode::exact);
}

Json colligation_to_json(const Colligation<Cx>& C) {
  return colligation_to_json_impl(C, Mode::floating);
}

ColligationVar colligation_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("colligation document must be an object");
  const Shape shape{require_int(j, "alpha"), require_int(j, "m"),
                    require_int(j, "N")};
  check_shape(shape);
  const Mode mode = parse_mode(require_str(j, "mode"));
  const Flavor flavor = parse_flavor(require_str(j, "flavor"));
  if (!j.contains("entries"))
    throw InputError("colligation document needs \"entries\"");
  const int n = shape.total();
  const auto check_size = [&](const auto& m) {
    if (m.rows() != n || m.cols() != n)
      throw InputError("entries must form the full " + std::to_string(n) +
                       "x" + std::to_string(n) + " matrix");
  };
  if (mode == Mode::exact) {
    if (flavor == Flavor::unitary)
      throw InputError("exact mode supports flavors general and invertible");
    Mat<ExactScalar> g = exact_mat_from_json(j["entries"]);
    check_size(g);
    return Colligation<ExactScalar>(shape, flavor, std::move(g));
  }
  Mat<Cx> g = float_mat_from_json(j["entries"]);
  check_size(g);
  return Colligation<Cx>(shape, flavor, std::move(g));
}

std::string cwb_key_str(const CwbKey& key) {
  return "g" + std::to_string(key.gamma) + "l" + std::to_string(key.l) + "|" +
         word_str(key.word) + "|b" + std::to_string(key.beta) + "k" +
         std::to_string(key.k);
}

namespace {

template <class F>
Json fingerprint_to_json_impl(const InvariantFingerprint<F>& fp, Mode mode) {
  Json j;
  j["shape"] = {{"alpha", fp.shape.alpha}, {"m", fp.shape.m},
                {"N", fp.shape.N}};
  j["mode"] = mode_name(mode);
  j["maxWordLen"] = fp.max_word_len;
  Json tw = Json::object();
  for (const auto& [w, v] : fp.trace_words) tw[word_str(w)] = scalar_to_json(v);
  j["traceWords"] = std::move(tw);
  Json cwb = Json::object();
  for (const auto& [key, v] : fp.cwb) cwb[cwb_key_str(key)] = scalar_to_json(v);
  j["cwb"] = std::move(cwb);
  j["aEntries"] = mat_to_json_impl(fp.a_entries);
  if (fp.sl_dets) {
    Json sl = Json::object();
    for (const auto& [key, v] : *fp.sl_dets)
      sl[plet_str(key)] = scalar_to_json(v);
    j["slDets"] = std::move(sl);
  } else {
    j["slDets"] = nullptr;
  }
  return j;
}

}  // namespace

Json fingerprint_to_json(const InvariantFingerprint<ExactScalar>& fp) {
  return fingerprint_to_json_impl(fp, Mode::exact);
}

Json fingerprint_to_json(const InvariantFingerprint<Cx>& fp) {
  return fingerprint_to_json_impl(fp, Mode::floating);
}

Json poly_to_json(const SparsePoly<ExactScalar>& p) {
  Json vars = Json::array();
  for (const VarId& v : p.vars()) vars.push_back(v.name());
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exponents", e}, {"coeff", format_exact(c)}});
  return {{"vars", std::move(vars)}, {"terms", std::move(terms)}};
}

Json divisor_summary_to_json(const DivisorSummary& s) {
  Json j;
  j["p"] = poly_to_json(s.p);
  j["totalDegree"] = s.total_degree;
  j["deltaMultiplicity"] = s.delta_mult;
  j["detLambdaMultiplicity"] =
      s.det_lambda_mult ? Json(*s.det_lambda_mult) : Json(nullptr);
  j["residualDegree"] = s.residual_degree;
  return j;
}

Json report_to_json(const Report& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    if (c.residual) jc["residual"] = *c.residual;
    jc["details"] = c.details;
    cases.push_back(std::move(jc));
  }
  Json j;
  j["suite"] = r.suite;
  j["mode"] = mode_name(r.mode);
  j["seed"] = r.seed;
  j["cases"] = std::move(cases);
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  j["inconclusive"] = r.inconclusive();
  return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace collig
