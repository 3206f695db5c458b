#include "ffdet/cli/matrix_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace ffdet::cli {

namespace {

mpz_class parse_integer(const std::string& token) {
  mpz_class out;
  std::string digits = token;
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  if (digits.empty() || out.set_str(digits, 10) != 0) throw ParseError("not an integer: '" + token + "'");
  return out;
}

mpz_class json_integer(const nlohmann::json& v) {
  if (v.is_number_integer()) return parse_integer(v.dump());
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw ParseError("coefficient must be an integer or a decimal string");
}

std::size_t json_size(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
    throw ParseError(std::string("polynomial matrix needs a non-negative integer '") + key + "'");
  }
  return doc[key].get<std::size_t>();
}

}  // namespace

Matrix<mpz_class> parse_int_matrix(std::istream& in) {
  std::string tok_n, tok_m;
  if (!(in >> tok_n >> tok_m)) throw ParseError("missing 'n m' header");
  const mpz_class n = parse_integer(tok_n);
  const mpz_class m = parse_integer(tok_m);
  if (n < 1 || m < 1 || n > 4096 || m > 4096) throw ParseError("matrix dimensions must be in [1, 4096]");
  const auto rows = n.get_ui();
  const auto cols = m.get_ui();
  std::vector<mpz_class> data;
  data.reserve(rows * cols);
  std::string tok;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    if (!(in >> tok)) throw ParseError("expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(k));
    data.push_back(parse_integer(tok));
  }
  if (in >> tok) throw ParseError("trailing data after matrix: '" + tok + "'");
  return Matrix<mpz_class>(rows, cols, std::move(data));
}

PolyMatrix parse_poly_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed polynomial matrix: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("polynomial matrix must be a JSON object");
  PolyMatrix out;
  out.s = json_size(doc, "s");
  out.p = static_cast<std::uint32_t>(json_size(doc, "p"));
  const std::size_t n = json_size(doc, "n");
  const std::size_t m = json_size(doc, "m");
  if (n < 1 || m < 1) throw ParseError("matrix dimensions must be positive");
  const auto& rows = doc.value("entries", nlohmann::json());
  if (!rows.is_array() || rows.size() != n) throw ParseError("'entries' must hold n rows");
  const IntPolyRing ring(IntegerRing{}, out.s);
  std::vector<IntPoly> data;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m) throw ParseError("every row must hold m entries");
    for (const auto& entry : row) {
      if (!entry.is_array()) throw ParseError("an entry must be a list of terms");
      std::vector<std::pair<mpz_class, Exponents>> terms;
      for (const auto& term : entry) {
        if (!term.is_array() || term.size() != out.s + 1) {
          throw ParseError("a term must be [coefficient, e_1, ..., e_s]");
        }
        Exponents e;
        for (std::size_t v = 0; v < out.s; ++v) {
          if (!term[v + 1].is_number_unsigned()) throw ParseError("exponents must be non-negative integers");
          const auto d = term[v + 1].get<std::uint64_t>();
          if (d > out.p) throw ParseError("exponent exceeds the declared degree cap p");
          e.push_back(static_cast<std::uint32_t>(d));
        }
        terms.emplace_back(json_integer(term[0]), std::move(e));
      }
      data.push_back(ring.from_terms(terms));
    }
  }
  out.entries = Matrix<IntPoly>(n, m, std::move(data));
  return out;
}

MatrixInput parse_matrix(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty matrix input");
  if (text[first] == '{') return parse_poly_matrix(text);
  std::istringstream body(text);
  return parse_int_matrix(body);
}

MatrixInput read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return parse_matrix(in);
}

std::string format_int_matrix(const Matrix<mpz_class>& a) {
  std::ostringstream out;
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string format_poly_matrix(const PolyMatrix& a) {
  using namespace poly_detail;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.entries.cols(); ++j) {
      const auto& e = a.entries(i, j);
      nlohmann::json terms = nlohmann::json::array();
      for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        if (sgn(e.coeffs[k]) == 0) continue;
        nlohmann::json term = nlohmann::json::array();
        if (e.coeffs[k].fits_slong_p()) {
          term.push_back(e.coeffs[k].get_si());
        } else {
          term.push_back(e.coeffs[k].get_str());
        }
        for (auto d : unrank(k, e.bounds)) term.push_back(d);
        terms.push_back(std::move(term));
      }
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json doc = {{"s", a.s}, {"p", a.p}, {"n", a.entries.rows()}, {"m", a.entries.cols()}, {"entries", rows}};
  return doc.dump() + "\n";
}

}  // namespace ffdet::cli
