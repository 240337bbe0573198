#include "maxplus/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maxplus::io {

namespace {

int64_t parse_i64(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw parse_error(std::string("trailing characters in ") + what);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (...) {
    throw parse_error(std::string("bad ") + what + ": '" + s + "'");
  }
}

int64_t pow10_checked(size_t k) {
  int64_t p = 1;
  for (size_t i = 0; i < k; ++i) {
    if (p > INT64_MAX / 10) throw parse_error("decimal with too many digits");
    p *= 10;
  }
  return p;
}

}  // namespace

Rational parse_rational(const std::string& token) {
  if (token.empty()) throw parse_error("empty scalar token");
  auto slash = token.find('/');
  if (slash != std::string::npos) {
    int64_t num = parse_i64(token.substr(0, slash), "numerator");
    int64_t den = parse_i64(token.substr(slash + 1), "denominator");
    if (den == 0) throw parse_error("zero denominator in '" + token + "'");
    return Rational(num, den);
  }
  auto dot = token.find('.');
  if (dot != std::string::npos) {
    std::string head = token.substr(0, dot), frac = token.substr(dot + 1);
    if (frac.empty()) throw parse_error("bad decimal '" + token + "'");
    for (char c : frac)
      if (c < '0' || c > '9') throw parse_error("bad decimal '" + token + "'");
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head += "0";
    int64_t whole = parse_i64(head, "decimal");
    int64_t scale = pow10_checked(frac.size());
    int64_t fpart = frac.empty() ? 0 : parse_i64(frac, "decimal fraction");
    __int128 num = (__int128)whole * scale + (neg || whole < 0 ? -fpart : fpart);
    return Rational::from_int128(num, scale, "decimal");
  }
  return Rational(parse_i64(token, "integer"));
}

ExtRational parse_scalar(const std::string& token) {
  if (token == "-inf" || token == "-Inf" || token == "-INF") return ExtRational::neg_inf();
  if (token == "+inf" || token == "inf" || token == "+Inf") return ExtRational::pos_inf();
  return ExtRational(parse_rational(token));
}

namespace {

MatrixFile parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  int m = 0, n = 0;
  if (!(in >> m >> n)) throw parse_error("missing 'm n' header");
  if (m < 1 || n < 1) throw parse_error("matrix dimensions must be positive");
  Matrix mat(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw parse_error("matrix body ended early");
      ExtRational v = parse_scalar(tok);
      if (v.is_pos_inf()) throw parse_error("+inf entry in matrix file");
      mat.set(i, j, v);
    }
  std::string extra;
  if (in >> extra) throw parse_error("trailing tokens after matrix body");
  return {mat, {}};
}

MatrixFile parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw parse_error("JSON matrix needs rows, cols, entries");
  int m = j["rows"].get<int>(), n = j["cols"].get<int>();
  if (m < 1 || n < 1) throw parse_error("matrix dimensions must be positive");
  const auto& rows = j["entries"];
  if (static_cast<int>(rows.size()) != m) throw parse_error("entries row count mismatch");
  Matrix mat(m, n);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw parse_error("entries column count mismatch");
    for (int jx = 0; jx < n; ++jx) {
      ExtRational v = parse_scalar(rows[i][jx].get<std::string>());
      if (v.is_pos_inf()) throw parse_error("+inf entry in matrix file");
      mat.set(i, jx, v);
    }
  }
  MatrixFile f{mat, {}};
  if (j.contains("meta"))
    for (auto& [k, v] : j["meta"].items()) f.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return f;
}

}  // namespace

MatrixFile parse_matrix(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (c == '{') return parse_matrix_json(text);
    break;
  }
  return parse_matrix_text(text);
}

MatrixFile load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string serialize_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j).to_string();
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_matrix_json(const Matrix& m,
                                  const std::map<std::string, std::string>& meta) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int jx = 0; jx < m.cols(); ++jx) row.push_back(m.at(i, jx).to_string());
    rows.push_back(row);
  }
  j["entries"] = rows;
  if (!meta.empty()) {
    nlohmann::json mj;
    for (const auto& [k, v] : meta) mj[k] = v;
    j["meta"] = mj;
  }
  return j.dump(2) + "\n";
}

void save_matrix(const std::string& path, const Matrix& m, bool json,
                 const std::map<std::string, std::string>& meta) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write '" + path + "'");
  out << (json ? serialize_matrix_json(m, meta) : serialize_matrix(m));
}

}  // namespace maxplus::io
