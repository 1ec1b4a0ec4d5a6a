#include "rba/rba_io.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include "rba/error.hpp"

namespace rba {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_index(const std::string& tok, std::size_t bound, int line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "bad index '" + tok + "'");
  }
  if (pos != tok.size() || tok[0] == '-' || tok[0] == '+') fail(line, "bad index '" + tok + "'");
  if (v >= bound) fail(line, "index " + tok + " out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace

Rba read_rba(std::istream& in) {
  std::optional<std::size_t> rank;
  std::optional<std::vector<std::size_t>> star;
  std::vector<std::optional<Scalar>> lam;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "rank") {
      if (rank) fail(line_no, "duplicate rank line");
      if (tok.size() != 2) fail(line_no, "expected 'rank <r>'");
      const std::size_t r = parse_index(tok[1], 1u << 16, line_no);
      if (r == 0) fail(line_no, "rank must be positive");
      rank = r;
      lam.assign(r * r * r, std::nullopt);
    } else if (tok[0] == "star") {
      if (!rank) fail(line_no, "'star' before 'rank'");
      if (star) fail(line_no, "duplicate star line");
      if (tok.size() != *rank + 1) fail(line_no, "star needs exactly rank entries");
      std::vector<std::size_t> s;
      for (std::size_t i = 1; i < tok.size(); ++i) s.push_back(parse_index(tok[i], *rank, line_no));
      star = std::move(s);
    } else if (tok[0] == "lambda") {
      if (!rank) fail(line_no, "'lambda' before 'rank'");
      if (tok.size() != 5) fail(line_no, "expected 'lambda <i> <j> <k> <value>'");
      const std::size_t r = *rank;
      const std::size_t i = parse_index(tok[1], r, line_no);
      const std::size_t j = parse_index(tok[2], r, line_no);
      const std::size_t k = parse_index(tok[3], r, line_no);
      auto& slot = lam[(i * r + j) * r + k];
      if (slot) fail(line_no, "duplicate lambda entry");
      try {
        slot = Scalar::parse(tok[4]);
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else {
      fail(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!rank) throw Error(ErrorCode::parse, "missing 'rank' line");
  if (!star) throw Error(ErrorCode::parse, "missing 'star' line");

  bool any_float = false;
  for (const auto& v : lam) any_float = any_float || (v && !v->is_exact());
  std::vector<Scalar> tensor;
  tensor.reserve(lam.size());
  for (auto& v : lam) {
    Scalar s = v ? *v : Scalar(0);
    tensor.push_back(any_float ? s.to_float() : s);
  }
  return Rba(*rank, std::move(tensor), std::move(*star));
}

Rba read_rba_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open " + path);
  return read_rba(in);
}

Rba parse_rba(const std::string& text) {
  std::istringstream in(text);
  return read_rba(in);
}

void write_rba(std::ostream& out, const Rba& rba, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string l; std::getline(lines, l);) out << "# " << l << "\n";
  }
  const std::size_t r = rba.rank();
  out << "rank " << r << "\n";
  out << "star";
  for (std::size_t i = 0; i < r; ++i) out << " " << rba.star(i);
  out << "\n";
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const Scalar& v = rba.lambda(i, j, k);
        const bool zero = v.is_exact() ? v.exact() == 0 : v.to_double() == 0.0;
        if (!zero) out << "lambda " << i << " " << j << " " << k << " " << v.to_string() << "\n";
      }
}

std::string format_rba(const Rba& rba, const std::string& comment) {
  std::ostringstream out;
  write_rba(out, rba, comment);
  return out.str();
}

}  // namespace rba
