#include "mrees/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace mrees {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw AlgebraError(std::string("spec is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraError(std::string("spec field \"") + key + "\": " + e.what());
  }
}

}  // namespace

ReesSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw AlgebraError("spec must be a JSON object");
  ReesSpec sp;
  const std::string mode = j.contains("mode") ? field<std::string>(j, "mode") : "generic";
  const std::string coeff = j.contains("coefficients") ? field<std::string>(j, "coefficients")
                            : mode == "concrete"       ? "ZZ"
                                                       : "QQ";
  if (coeff == "QQ")
    sp.coefficients = CoeffDomain::QQ;
  else if (coeff == "ZZ")
    sp.coefficients = CoeffDomain::ZZ;
  else
    throw AlgebraError("coefficients must be \"QQ\" or \"ZZ\"");

  if (mode == "generic") {
    const auto n = field<long long>(j, "n");
    if (n < 1) throw AlgebraError("n must be positive");
    std::vector<std::string> names;
    if (j.contains("names")) names = field<std::vector<std::string>>(j, "names");
    if (!names.empty() && names.size() != static_cast<std::size_t>(n))
      throw AlgebraError("\"names\" must list n names");
    if (j.contains("s")) throw AlgebraError("\"s\" values are only allowed in concrete mode");
    sp.seq = SeqSpec::generic(static_cast<std::size_t>(n), std::move(names));
  } else if (mode == "concrete") {
    auto values = field<std::vector<std::string>>(j, "s");
    auto xs = field<std::vector<std::string>>(j, "x_vars");
    if (j.contains("n") && field<long long>(j, "n") != static_cast<long long>(values.size()))
      throw AlgebraError("n differs from the number of s values");
    sp.seq = SeqSpec::concrete(std::move(values), std::move(xs));
  } else {
    throw AlgebraError("mode must be \"generic\" or \"concrete\"");
  }
  sp.ideals = field<std::vector<std::vector<int>>>(j, "ideals");
  sp.a = field<std::vector<int>>(j, "a");
  sp.validate();
  return sp;
}

nlohmann::ordered_json spec_to_json(const ReesSpec& spec) {
  nlohmann::ordered_json j;
  const bool concrete = spec.seq.mode == SeqMode::CONCRETE;
  j["mode"] = concrete ? "concrete" : "generic";
  j["coefficients"] = spec.coefficients == CoeffDomain::ZZ ? "ZZ" : "QQ";
  j["n"] = spec.seq.n;
  if (concrete) {
    j["s"] = spec.seq.concrete_text;
    j["x_vars"] = spec.seq.x_names;
  } else {
    j["names"] = spec.seq.names;
  }
  j["ideals"] = spec.ideals;
  j["a"] = spec.a;
  return j;
}

ReesSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open spec file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraError("spec file " + path + " is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

OutputFormat parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::TEXT;
  if (s == "json") return OutputFormat::JSON;
  if (s == "cas") return OutputFormat::CAS;
  throw AlgebraError("unknown format '" + std::string(s) + "'");
}

nlohmann::ordered_json poly_to_json(const Poly& p) {
  const auto& u = *p.universe();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : p.terms()) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [v, e] : t.mono.entries()) m[u.name(v)] = e;
    terms.push_back({{"coeff", t.coeff.get_str()}, {"monomial", std::move(m)}});
  }
  return terms;
}

nlohmann::ordered_json quasi_matrix_to_json(const QuasiMatrix& a,
                                            const std::vector<std::string>& row_labels) {
  nlohmann::ordered_json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  if (!row_labels.empty()) j["row_labels"] = row_labels;
  auto grid = nlohmann::ordered_json::array();
  for (int r = 0; r < a.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < a.cols(); ++c) {
      auto v = a.at({r, c});
      row.push_back(v ? nlohmann::ordered_json(a.universe()->name(*v)) : nlohmann::ordered_json());
    }
    grid.push_back(std::move(row));
  }
  j["entries"] = std::move(grid);
  return j;
}

std::string cas_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '[' || c == ';' || c == ',')
      out += '_';
    else if (c != ']')
      out += c;
  }
  return out;
}

std::string cas_ideal(const std::vector<Poly>& gens, const ReesPresentation& pres) {
  const auto& u = *pres.universe();
  const bool concrete = pres.spec().seq.mode == SeqMode::CONCRETE;
  std::vector<std::optional<Poly>> subst(u.size());
  std::vector<VarId> ring;
  if (concrete) {
    for (std::size_t i = 0; i < u.n_s(); ++i) subst[u.s(i)] = pres.s_values()[i];
    for (std::size_t i = 0; i < u.n_x(); ++i) ring.push_back(u.x(i));
  } else {
    for (std::size_t i = 0; i < u.n_s(); ++i) ring.push_back(u.s(i));
  }
  for (VarId v : pres.S_variables()) ring.push_back(v);

  const auto ord = MonomialOrder::standard(u, OrderKind::LEX);
  auto poly_text = [&](const Poly& p) { return cas_name(to_string(p, ord)); };

  std::ostringstream os;
  os << "R = " << (pres.spec().coefficients == CoeffDomain::ZZ ? "ZZ" : "QQ") << "[";
  for (std::size_t i = 0; i < ring.size(); ++i) os << (i ? ", " : "") << cas_name(u.name(ring[i]));
  os << "];\nI = ideal(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Poly p = concrete ? gens[i].substitute(subst) : gens[i];
    os << (i ? ",\n  " : "\n  ") << poly_text(p);
  }
  os << (gens.empty() ? "" : "\n") << ");\n";
  return os.str();
}

std::vector<Poly> parse_generator_list(std::istream& in, const UniversePtr& u) {
  std::vector<Poly> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(parse_poly(line, u));
  }
  return out;
}

}  // namespace mrees
