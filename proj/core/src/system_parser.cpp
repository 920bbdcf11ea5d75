#include "doa/system_parser.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "doa/errors.hpp"

namespace doa {
namespace {

SparsePolynomial add(SparsePolynomial a, const SparsePolynomial& b,
                     double sign) {
  for (const auto& [j, c] : b) a[j] += sign * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0.0; });
  return a;
}

SparsePolynomial mul(const SparsePolynomial& a, const SparsePolynomial& b) {
  SparsePolynomial out;
  for (const auto& [ja, ca] : a) {
    for (const auto& [jb, cb] : b) {
      if (ja.degree() + jb.degree() > kMaxDegree) {
        throw CapacityError("expanded polynomial exceeds degree " +
                            std::to_string(kMaxDegree));
      }
      out[ja + jb] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

SparsePolynomial constant(int dim, double value) {
  SparsePolynomial p;
  if (value != 0.0) p[MultiIndex(dim)] = value;
  return p;
}

// Recursive-descent parser over one expression line.
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'x' integer | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, int line, int column_base, int dim)
      : text_(text), line_(line), column_base_(column_base), dim_(dim) {}

  SparsePolynomial parse() {
    SparsePolynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" +
                                   std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_base_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePolynomial expr() {
    SparsePolynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc = add(std::move(acc), term(), 1.0);
      } else if (accept('-')) {
        acc = add(std::move(acc), term(), -1.0);
      } else {
        return acc;
      }
    }
  }

  SparsePolynomial term() {
    SparsePolynomial acc = unary();
    while (accept('*')) acc = mul(acc, unary());
    return acc;
  }

  SparsePolynomial unary() {
    if (accept('-')) return add(constant(dim_, 0.0), unary(), -1.0);
    if (accept('+')) return unary();
    return power();
  }

  SparsePolynomial power() {
    SparsePolynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    const int e = integer("exponent");
    SparsePolynomial out = constant(dim_, 1.0);
    for (int k = 0; k < e; ++k) out = mul(out, base);
    return out;
  }

  int integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail(std::string("expected ") + what);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) {
      pos_ = start;
      fail(std::string(what) + " out of range");
    }
    return value;
  }

  SparsePolynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePolynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      const int k = integer("variable index");
      if (k < 1 || k > dim_) {
        pos_ = at;
        fail("variable x" + std::to_string(k) + " outside declared dim " +
             std::to_string(dim_));
      }
      SparsePolynomial p;
      p[MultiIndex::unit(dim_, k - 1)] = 1.0;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          ++pos_;
        }
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(text_.data() + start, text_.data() + pos_, value);
      if (ec != std::errc{} || ptr != text_.data() + pos_) {
        pos_ = start;
        fail("malformed number");
      }
      return constant(dim_, value);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_base_;
  int dim_;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

std::size_t first_non_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

PolyField parse_system(std::string_view text) {
  std::optional<int> dim;
  std::vector<std::optional<SparsePolynomial>> comps;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = strip_comment(raw);
    const std::size_t lead = first_non_space(line);
    if (lead == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    std::string_view body = line.substr(lead);
    const int col0 = static_cast<int>(lead) + 1;

    if (!dim) {
      if (body.substr(0, 3) != "dim" ||
          (body.size() > 3 && !std::isspace(static_cast<unsigned char>(body[3])))) {
        throw ParseError("expected 'dim <n>' declaration", line_no, col0);
      }
      std::string_view rest = body.substr(3);
      const std::size_t skip = first_non_space(rest);
      rest = rest.substr(skip);
      while (!rest.empty() &&
             std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.remove_suffix(1);
      }
      int n = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
      if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
        throw ParseError("malformed dimension", line_no,
                         col0 + 3 + static_cast<int>(skip));
      }
      if (n < 1 || n > kMaxDim) {
        throw ParseError("dimension must be in 1.." + std::to_string(kMaxDim),
                         line_no, col0 + 3 + static_cast<int>(skip));
      }
      dim = n;
      comps.assign(static_cast<std::size_t>(n), std::nullopt);
      if (end == text.size()) break;
      continue;
    }

    if (body.substr(0, 2) != "dx") {
      throw ParseError("expected 'dx<i> = <polynomial>'", line_no, col0);
    }
    std::size_t p = 2;
    const std::size_t digits = p;
    while (p < body.size() && std::isdigit(static_cast<unsigned char>(body[p]))) ++p;
    int k = 0;
    if (p == digits ||
        std::from_chars(body.data() + digits, body.data() + p, k).ec !=
            std::errc{}) {
      throw ParseError("expected component index after 'dx'", line_no,
                       col0 + static_cast<int>(digits));
    }
    if (k < 1 || k > *dim) {
      throw ParseError("component dx" + std::to_string(k) +
                           " outside declared dim " + std::to_string(*dim),
                       line_no, col0);
    }
    if (comps[static_cast<std::size_t>(k - 1)]) {
      throw ParseError("duplicate definition of dx" + std::to_string(k),
                       line_no, col0);
    }
    while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    if (p >= body.size() || body[p] != '=') {
      throw ParseError("expected '='", line_no, col0 + static_cast<int>(p));
    }
    ++p;
    ExprParser parser(body.substr(p), line_no, col0 + static_cast<int>(p),
                      *dim);
    SparsePolynomial poly = parser.parse();
    if (auto it = poly.find(MultiIndex(*dim)); it != poly.end()) {
      throw ParseError("dx" + std::to_string(k) +
                           " has a constant term; the origin must be a "
                           "steady state",
                       line_no, col0);
    }
    comps[static_cast<std::size_t>(k - 1)] = std::move(poly);
    if (end == text.size()) break;
  }

  if (!dim) throw ParseError("missing 'dim <n>' declaration", line_no, 1);
  std::vector<SparsePolynomial> out;
  for (int i = 0; i < *dim; ++i) {
    if (!comps[static_cast<std::size_t>(i)]) {
      throw ParseError("missing definition of dx" + std::to_string(i + 1),
                       line_no, 1);
    }
    out.push_back(std::move(*comps[static_cast<std::size_t>(i)]));
  }
  return PolyField(std::move(out));
}

PolyField load_system(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open system file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string serialize_system(const PolyField& field) {
  std::ostringstream out;
  out << "dim " << field.dim() << '\n';
  for (int i = 0; i < field.dim(); ++i) {
    out << "dx" << (i + 1) << " =";
    const auto& comp = field.component(i);
    if (comp.empty()) out << " 0";
    bool first = true;
    for (const auto& [j, c] : comp) {
      const bool negative = std::signbit(c);
      out << (negative ? " - " : (first ? " " : " + "));
      out << format_double(negative ? -c : c);
      for (int k = 0; k < field.dim(); ++k) {
        if (j[k] == 0) continue;
        out << "*x" << (k + 1);
        if (j[k] > 1) out << '^' << j[k];
      }
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace doa
