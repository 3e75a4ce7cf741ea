#include "cvnn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cvnn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const json& need(const json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) fail(field, "missing");
  return *it;
}

double need_num(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

Vec parse_vec(const json& j, const std::string& field, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(field, "expected an array of length n");
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = need_num(j[i], field);
  return v;
}

Mat parse_mat(const json& j, const std::string& field, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(field, "expected an n x n array");
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      fail(field, "row " + std::to_string(r) + " must have n entries");
    for (int c = 0; c < n; ++c) m(r, c) = need_num(j[r][c], field);
  }
  return m;
}

ActivationComponent parse_component(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object {sigma, c1, c2}");
  ActivationComponent c;
  const std::string sigma = need(j, "sigma").get<std::string>();
  if (sigma == "logistic")
    c.kind = Sigma::Logistic;
  else if (sigma == "bipolar")
    c.kind = Sigma::Bipolar;
  else
    fail(field + ".sigma", "unsupported sigma kind '" + sigma + "'");
  c.c1 = need_num(need(j, "c1"), field + ".c1");
  c.c2 = need_num(need(j, "c2"), field + ".c2");
  return c;
}

DelayEntry parse_delay(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected {const} or {base, amp, phase, kind}");
  DelayEntry e;
  if (j.contains("const")) {
    e.kind = DelayEntry::Kind::Constant;
    e.base = need_num(j["const"], field + ".const");
    return e;
  }
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "sin")
    e.kind = DelayEntry::Kind::Sin;
  else if (kind == "cos")
    e.kind = DelayEntry::Kind::Cos;
  else
    fail(field + ".kind", "expected 'sin' or 'cos'");
  e.base = need_num(need(j, "base"), field + ".base");
  e.amp = need_num(need(j, "amp"), field + ".amp");
  e.phase = j.contains("phase") ? need_num(j["phase"], field + ".phase") : 0.0;
  return e;
}

void print_num(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

NetworkSpec load_network(const json& doc) {
  if (!doc.is_object()) throw ParseError("top level: expected a JSON object");
  NetworkSpec net;
  const json& jn = need(doc, "n");
  if (!jn.is_number_integer() || jn.get<int>() <= 0) fail("n", "expected a positive integer");
  const int n = jn.get<int>();
  net.n = n;
  net.d = parse_vec(need(doc, "d"), "d", n);
  const Mat Are = parse_mat(need(doc, "A_re"), "A_re", n);
  const Mat Aim = parse_mat(need(doc, "A_im"), "A_im", n);
  const Mat Bre = parse_mat(need(doc, "B_re"), "B_re", n);
  const Mat Bim = parse_mat(need(doc, "B_im"), "B_im", n);
  net.A.resize(n, n);
  net.B.resize(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      net.A(r, c) = Complex(Are(r, c), Aim(r, c));
      net.B(r, c) = Complex(Bre(r, c), Bim(r, c));
    }
  const Vec ure = parse_vec(need(doc, "u_re"), "u_re", n);
  const Vec uim = parse_vec(need(doc, "u_im"), "u_im", n);
  net.u.resize(n);
  for (int i = 0; i < n; ++i) net.u[i] = Complex(ure[i], uim[i]);

  const json& jd = need(doc, "delays");
  if (!jd.is_array() || static_cast<int>(jd.size()) != n) fail("delays", "expected an n x n array");
  net.delays.n = n;
  net.delays.entries.resize(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    if (!jd[r].is_array() || static_cast<int>(jd[r].size()) != n)
      fail("delays", "row " + std::to_string(r) + " must have n entries");
    for (int c = 0; c < n; ++c)
      net.delays.at(r, c) = parse_delay(jd[r][c], "delays[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }

  const json& ja = need(doc, "activations");
  if (!ja.is_array() || static_cast<int>(ja.size()) != n) fail("activations", "expected n node entries");
  net.activations.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::string base = "activations[" + std::to_string(i) + "]";
    const json& node = ja[i];
    if (!node.is_object()) fail(base, "expected {fR, fI, gR, gI}");
    net.activations.nodes[i].fR = parse_component(need(node, "fR"), base + ".fR");
    net.activations.nodes[i].fI = parse_component(need(node, "fI"), base + ".fI");
    net.activations.nodes[i].gR = parse_component(need(node, "gR"), base + ".gR");
    net.activations.nodes[i].gI = parse_component(need(node, "gI"), base + ".gI");
  }

  try {
    net.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return net;
}

NetworkSpec load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json syntax: ") + e.what());
  }
  return load_network(doc);
}

std::vector<VecC> load_cases(const json& doc) {
  std::vector<VecC> out;
  if (!doc.contains("cases")) return out;
  const json& jc = doc["cases"];
  if (!jc.is_array()) fail("cases", "expected an array of cases");
  const int n = need(doc, "n").get<int>();
  for (size_t i = 0; i < jc.size(); ++i) {
    const json& one = jc[i];
    const std::string base = "cases[" + std::to_string(i) + "]";
    if (!one.is_array() || static_cast<int>(one.size()) != n) fail(base, "expected n [re, im] pairs");
    VecC z(n);
    for (int k = 0; k < n; ++k) {
      if (!one[k].is_array() || one[k].size() != 2) fail(base, "entry must be [re, im]");
      z[k] = Complex(need_num(one[k][0], base), need_num(one[k][1], base));
    }
    out.push_back(std::move(z));
  }
  return out;
}

nlohmann::json network_to_json(const NetworkSpec& net) {
  json doc;
  const int n = net.n;
  doc["n"] = n;
  doc["d"] = std::vector<double>(net.d.data(), net.d.data() + n);
  auto mat = [&](auto get) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r][c] = get(r, c);
    return m;
  };
  doc["A_re"] = mat([&](int r, int c) { return net.A(r, c).real(); });
  doc["A_im"] = mat([&](int r, int c) { return net.A(r, c).imag(); });
  doc["B_re"] = mat([&](int r, int c) { return net.B(r, c).real(); });
  doc["B_im"] = mat([&](int r, int c) { return net.B(r, c).imag(); });
  std::vector<double> ure(n), uim(n);
  for (int i = 0; i < n; ++i) {
    ure[i] = net.u[i].real();
    uim[i] = net.u[i].imag();
  }
  doc["u_re"] = ure;
  doc["u_im"] = uim;
  json delays = json::array();
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) {
      const DelayEntry& e = net.delays.at(r, c);
      if (e.kind == DelayEntry::Kind::Constant)
        row.push_back(json{{"const", e.base}});
      else
        row.push_back(json{{"base", e.base},
                           {"amp", e.amp},
                           {"phase", e.phase},
                           {"kind", e.kind == DelayEntry::Kind::Sin ? "sin" : "cos"}});
    }
    delays.push_back(std::move(row));
  }
  doc["delays"] = std::move(delays);
  json acts = json::array();
  auto comp = [](const ActivationComponent& c) {
    return json{{"sigma", c.kind == Sigma::Logistic ? "logistic" : "bipolar"},
                {"c1", c.c1},
                {"c2", c.c2}};
  };
  for (int i = 0; i < n; ++i) {
    const NodeActivation& a = net.activations.nodes[i];
    acts.push_back(json{{"fR", comp(a.fR)}, {"fI", comp(a.fI)}, {"gR", comp(a.gR)}, {"gI", comp(a.gI)}});
  }
  doc["activations"] = std::move(acts);
  return doc;
}

nlohmann::json to_json(const Margins& m) {
  json j;
  j["family"] = family_name(m.family);
  j["epsilon"] = m.epsilon;
  j["xi"] = std::vector<double>(m.xi.data(), m.xi.data() + m.xi.size());
  j["rows"] = std::vector<double>(m.rows.data(), m.rows.data() + m.rows.size());
  if (m.lambda_consistent) j["lambda_consistent"] = true;
  return j;
}

nlohmann::json to_json(const Certificate& c) {
  json j;
  j["family"] = family_name(c.family);
  j["feasible"] = c.feasible;
  j["xi"] = std::vector<double>(c.xi.data(), c.xi.data() + c.xi.size());
  j["epsilon"] = c.epsilon;
  j["rate"] = c.rate;
  j["slack"] = c.slack;
  j["margins"] = std::vector<double>(c.margins.rows.data(), c.margins.rows.data() + c.margins.rows.size());
  j["binding_rows"] = c.binding_rows;
  if (c.margins.lambda_consistent) j["lambda_consistent"] = true;
  return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int stride) {
  if (stride < 1) throw std::invalid_argument("write_trajectory_csv: stride must be >= 1");
  const int n = traj.dim() / 2;
  os << "t";
  for (int k = 1; k <= n; ++k) os << ",z" << k << "R,z" << k << "I";
  os << ",norm_inf,norm_1,norm_2\n";
  auto row = [&](int i) {
    const Vec& z = traj.z[i];
    print_num(os, traj.t[i]);
    for (int k = 0; k < n; ++k) {
      os << ',';
      print_num(os, z[k]);
      os << ',';
      print_num(os, z[n + k]);
    }
    os << ',';
    print_num(os, z.cwiseAbs().maxCoeff());
    os << ',';
    print_num(os, z.cwiseAbs().sum());
    os << ',';
    print_num(os, z.norm());
    os << '\n';
  };
  const int last = traj.samples() - 1;
  for (int i = 0; i <= last; i += stride) row(i);
  if (last % stride != 0) row(last);
}

CsvTable read_csv(std::istream& is) {
  CsvTable out;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("csv: empty stream");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) out.header.push_back(cell);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> r;
    while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
    if (r.size() != out.header.size()) throw ParseError("csv: ragged row");
    rows.push_back(std::move(r));
  }
  out.rows.resize(static_cast<int>(rows.size()), static_cast<int>(out.header.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) out.rows(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return out;
}

void write_matrix_csv(std::ostream& os, const Mat& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      print_num(os, m(r, c));
    }
    os << '\n';
  }
}

}  // namespace cvnn
