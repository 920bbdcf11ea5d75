#include "doa/serialization.hpp"

#include <fstream>

#include "doa/errors.hpp"

namespace doa {
namespace {

constexpr const char* kAtlasFormat = "doa-atlas/1";

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(complex_to_json(z));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  }
  return v;
}

Json real_vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

RealVector real_vector_from_json(const Json& j) {
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(vector_to_json(m.row(r).transpose()));
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw Error("ragged matrix");
    m.row(r) = vector_from_json(j[r]).transpose();
  }
  return m;
}

Json candidate_to_json(const GrowthCandidate& c) {
  return Json{{"chart", c.chart},   {"direction", c.direction},
              {"x", real_vector_to_json(c.x)}, {"z", vector_to_json(c.z)},
              {"abs_w", c.abs_w},   {"margin", c.margin}};
}

GrowthCandidate candidate_from_json(const Json& j) {
  GrowthCandidate c;
  c.chart = j.at("chart").get<int>();
  c.direction = j.at("direction").get<int>();
  c.x = real_vector_from_json(j.at("x"));
  c.z = vector_from_json(j.at("z"));
  c.abs_w = j.at("abs_w").get<double>();
  c.margin = j.at("margin").get<double>();
  return c;
}

Json step_to_json(const GrowthStep& s) {
  Json selected = Json::array();
  for (const auto& c : s.selected) selected.push_back(candidate_to_json(c));
  return Json{{"step", s.step},
              {"w_max", s.w_max},
              {"sampled", s.sampled},
              {"rays_unbounded", s.rays_unbounded},
              {"rejected_large", s.rejected_large},
              {"rejected_covered", s.rejected_covered},
              {"rejected_separation", s.rejected_separation},
              {"selected", selected},
              {"charts_added", s.charts_added},
              {"stopped", s.stopped},
              {"stop_reason", s.stop_reason}};
}

GrowthStep step_from_json(const Json& j) {
  GrowthStep s;
  s.step = j.at("step").get<int>();
  s.w_max = j.at("w_max").get<double>();
  s.sampled = j.at("sampled").get<std::size_t>();
  s.rays_unbounded = j.at("rays_unbounded").get<std::size_t>();
  s.rejected_large = j.at("rejected_large").get<std::size_t>();
  s.rejected_covered = j.at("rejected_covered").get<std::size_t>();
  s.rejected_separation = j.at("rejected_separation").get<std::size_t>();
  for (const auto& c : j.at("selected")) s.selected.push_back(candidate_from_json(c));
  s.charts_added = j.at("charts_added").get<std::vector<int>>();
  s.stopped = j.at("stopped").get<bool>();
  s.stop_reason = j.at("stop_reason").get<std::string>();
  return s;
}

}  // namespace

Json embryo_to_json(const Embryo& embryo) {
  const ComplexSeries& s = embryo.series();
  Json coeffs = Json::array();
  const auto values = s.coefficients();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == Complex{}) continue;
    const MultiIndex j = s.layout().unrank(k);
    std::vector<int> exps(static_cast<std::size_t>(j.dim()));
    for (int i = 0; i < j.dim(); ++i) exps[static_cast<std::size_t>(i)] = j[i];
    coeffs.push_back(Json{{"j", exps}, {"re", values[k].real()}, {"im", values[k].imag()}});
  }
  return Json{{"n", s.dim()},
              {"p", s.max_degree()},
              {"generation", embryo.generation()},
              {"center", vector_to_json(s.center())},
              {"coeffs", coeffs}};
}

Embryo embryo_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    ComplexVector center = vector_from_json(j.at("center"));
    if (center.size() != n) throw Error("embryo center has wrong dimension");
    ComplexSeries s(n, p, std::move(center));
    for (const auto& c : j.at("coeffs")) {
      const auto exps = c.at("j").get<std::vector<int>>();
      if (static_cast<int>(exps.size()) != n) throw Error("coefficient index dimension");
      MultiIndex idx(n);
      for (int i = 0; i < n; ++i) idx.set(i, exps[static_cast<std::size_t>(i)]);
      if (idx.degree() > p) throw Error("coefficient above embryo degree");
      s.at(idx) = Complex(c.at("re").get<double>(), c.at("im").get<double>());
    }
    return Embryo(std::move(s), j.at("generation").get<int>());
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed embryo: ") + e.what());
  }
}

Json spectrum_to_json(const Spectrum& spectrum) {
  return Json{{"eigenvalues", vector_to_json(spectrum.eigenvalues)},
              {"S", matrix_to_json(spectrum.S)},
              {"S_inv", matrix_to_json(spectrum.S_inv)}};
}

Spectrum spectrum_from_json(const Json& j) {
  try {
    Spectrum s;
    s.eigenvalues = vector_from_json(j.at("eigenvalues"));
    s.S = matrix_from_json(j.at("S"));
    s.S_inv = matrix_from_json(j.at("S_inv"));
    const auto n = s.eigenvalues.size();
    if (s.S.rows() != n || s.S.cols() != n || s.S_inv.rows() != n ||
        s.S_inv.cols() != n) {
      throw Error("spectrum matrices do not match the eigenvalue count");
    }
    return s;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed spectrum: ") + e.what());
  }
}

Json atlas_to_json(const Atlas& atlas) {
  Json charts = Json::array();
  for (const Chart& c : atlas.charts()) charts.push_back(embryo_to_json(c.embryo()));
  Json log = Json::array();
  for (const GrowthStep& s : atlas.growth_log()) log.push_back(step_to_json(s));
  return Json{{"format", kAtlasFormat},
              {"system_id", atlas.system_id()},
              {"rule", to_string(atlas.origin_chart().rule())},
              {"spectrum", spectrum_to_json(atlas.spectrum())},
              {"charts", charts},
              {"growth_log", log}};
}

Atlas atlas_from_json(const Json& j) {
  try {
    if (j.at("format").get<std::string>() != kAtlasFormat) {
      throw Error("unsupported atlas format");
    }
    auto spectrum =
        std::make_shared<const Spectrum>(spectrum_from_json(j.at("spectrum")));
    const MembershipRule rule =
        membership_rule_from_string(j.at("rule").get<std::string>());
    const auto& charts = j.at("charts");
    if (charts.empty()) throw Error("atlas has no charts");
    Atlas atlas(j.at("system_id").get<std::string>(), spectrum,
                Chart(embryo_from_json(charts[0]), spectrum, rule));
    for (std::size_t c = 1; c < charts.size(); ++c) {
      atlas.add_chart(Chart(embryo_from_json(charts[c]), spectrum, rule));
    }
    for (const auto& s : j.at("growth_log")) {
      atlas.growth_log().push_back(step_from_json(s));
    }
    return atlas;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed atlas: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("inconsistent atlas: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace doa
