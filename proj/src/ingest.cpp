#include "rba/ingest.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "rba/error.hpp"

namespace rba {

namespace {

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(no, line);
  }
  return out;
}

std::vector<long long> integers(const std::string& text, std::size_t line) {
  std::istringstream ss(text);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw Error(ErrorCode::parse, where(line) + "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

template <class T>
T open_and_parse(const std::string& path, T (*parse)(std::istream&)) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot open " + path);
  return parse(f);
}

}  // namespace

CayleyTable parse_cayley(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw Error(ErrorCode::parse, "empty Cayley table");
  std::istringstream head(lines[0].second);
  std::string kw;
  long long m = 0;
  std::string extra;
  if (!(head >> kw >> m) || kw != "order" || m <= 0 || (head >> extra)) {
    throw Error(ErrorCode::parse, where(lines[0].first) + "expected 'order <m>'");
  }
  CayleyTable t;
  t.order = static_cast<std::size_t>(m);
  if (lines.size() != t.order + 1) {
    throw Error(ErrorCode::parse, "expected " + std::to_string(m) + " rows, got " + std::to_string(lines.size() - 1));
  }
  for (std::size_t i = 0; i < t.order; ++i) {
    const auto& [no, text] = lines[i + 1];
    const auto row = integers(text, no);
    if (row.size() != t.order) throw Error(ErrorCode::parse, where(no) + "row has wrong length");
    std::vector<std::size_t> r;
    for (long long v : row) {
      if (v < 0 || v >= m) throw Error(ErrorCode::parse, where(no) + "index out of range");
      r.push_back(static_cast<std::size_t>(v));
    }
    t.table.push_back(std::move(r));
  }
  return t;
}

CayleyTable read_cayley_file(const std::string& path) { return open_and_parse(path, &parse_cayley); }

Rba from_group(const CayleyTable& c) {
  const std::size_t m = c.order;
  if (m == 0 || c.table.size() != m) throw Error(ErrorCode::structural, "Cayley table has wrong shape");
  for (const auto& row : c.table) {
    if (row.size() != m) throw Error(ErrorCode::structural, "Cayley table has wrong shape");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (c.table[0][i] != i || c.table[i][0] != i) {
      throw Error(ErrorCode::invalid_input, "element 0 is not the identity at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<bool> in_row(m), in_col(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (in_row[c.table[i][j]]) {
        throw Error(ErrorCode::invalid_input, "not a Latin square: row " + std::to_string(i) + " repeats an entry");
      }
      if (in_col[c.table[j][i]]) {
        throw Error(ErrorCode::invalid_input, "not a Latin square: column " + std::to_string(i) + " repeats an entry");
      }
      in_row[c.table[i][j]] = in_col[c.table[j][i]] = true;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (c.table[c.table[i][j]][k] != c.table[i][c.table[j][k]]) {
          throw Error(ErrorCode::invalid_input, "not associative at triple " + triple(i, j, k));
        }
      }
  std::vector<std::size_t> star(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (c.table[i][j] == 0) star[i] = j;

  std::vector<Scalar> lambda(m * m * m, Scalar(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) lambda[(i * m + j) * m + c.table[i][j]] = Scalar(1);
  return Rba(m, std::move(lambda), std::move(star));
}

SchemeRelations parse_scheme(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw Error(ErrorCode::parse, "empty scheme file");
  std::istringstream head(lines[0].second);
  std::string kw1, kw2, extra;
  long long v = 0, r = 0;
  if (!(head >> kw1 >> v >> kw2 >> r) || kw1 != "points" || kw2 != "classes" || v <= 0 || r <= 0 ||
      (head >> extra)) {
    throw Error(ErrorCode::parse, where(lines[0].first) + "expected 'points <v> classes <r>'");
  }
  SchemeRelations s;
  s.points = static_cast<std::size_t>(v);
  const std::size_t nr = static_cast<std::size_t>(r);
  if (lines.size() != nr * s.points + 1) {
    throw Error(ErrorCode::parse, "expected " + std::to_string(nr * s.points) + " matrix rows, got " +
                                      std::to_string(lines.size() - 1));
  }
  std::size_t at = 1;
  for (std::size_t c = 0; c < nr; ++c) {
    std::vector<std::vector<int>> mat;
    for (std::size_t x = 0; x < s.points; ++x, ++at) {
      const auto& [no, text] = lines[at];
      const auto row = integers(text, no);
      if (row.size() != s.points) throw Error(ErrorCode::parse, where(no) + "row has wrong length");
      std::vector<int> out;
      for (long long e : row) {
        if (e != 0 && e != 1) throw Error(ErrorCode::parse, where(no) + "entries must be 0 or 1");
        out.push_back(static_cast<int>(e));
      }
      mat.push_back(std::move(out));
    }
    s.relations.push_back(std::move(mat));
  }
  return s;
}

SchemeRelations read_scheme_file(const std::string& path) { return open_and_parse(path, &parse_scheme); }

void write_scheme(std::ostream& out, const SchemeRelations& s) {
  out << "points " << s.points << " classes " << s.relations.size() << '\n';
  for (const auto& mat : s.relations) {
    for (const auto& row : mat) {
      for (std::size_t y = 0; y < row.size(); ++y) out << (y ? " " : "") << row[y];
      out << '\n';
    }
  }
}

Rba from_scheme(const SchemeRelations& s) {
  const std::size_t v = s.points;
  const std::size_t r = s.relations.size();
  if (v == 0 || r == 0) throw Error(ErrorCode::structural, "empty scheme");
  for (const auto& mat : s.relations) {
    if (mat.size() != v) throw Error(ErrorCode::structural, "relation matrix has wrong shape");
    for (const auto& row : mat)
      if (row.size() != v) throw Error(ErrorCode::structural, "relation matrix has wrong shape");
  }
  for (std::size_t x = 0; x < v; ++x)
    for (std::size_t y = 0; y < v; ++y) {
      if (s.relations[0][x][y] != (x == y ? 1 : 0)) throw Error(ErrorCode::invalid_input, "R_0 is not the identity");
      int sum = 0;
      for (const auto& mat : s.relations) sum += mat[x][y];
      if (sum != 1) {
        throw Error(ErrorCode::invalid_input, "relations do not partition all pairs at (" + std::to_string(x) + "," +
                                                  std::to_string(y) + ")");
      }
    }
  // owner[x][y] = index of the relation containing (x, y)
  std::vector<std::vector<std::size_t>> owner(v, std::vector<std::size_t>(v));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t x = 0; x < v; ++x)
      for (std::size_t y = 0; y < v; ++y)
        if (s.relations[c][x][y]) owner[x][y] = c;

  std::vector<std::size_t> star(r);
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t x0 = v, y0 = v;
    for (std::size_t x = 0; x < v && x0 == v; ++x)
      for (std::size_t y = 0; y < v; ++y)
        if (s.relations[c][x][y]) {
          x0 = x;
          y0 = y;
          break;
        }
    if (x0 == v) throw Error(ErrorCode::invalid_input, "relation " + std::to_string(c) + " is empty");
    const std::size_t t = owner[y0][x0];
    for (std::size_t x = 0; x < v; ++x)
      for (std::size_t y = 0; y < v; ++y)
        if (s.relations[c][x][y] != s.relations[t][y][x]) {
          throw Error(ErrorCode::invalid_input, "not a scheme: transpose of R_" + std::to_string(c) +
                                                    " is not a relation");
        }
    star[c] = t;
  }

  std::vector<Scalar> lambda(r * r * r, Scalar(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<long long> p(r, -1);
      for (std::size_t x = 0; x < v; ++x)
        for (std::size_t z = 0; z < v; ++z) {
          long long count = 0;
          for (std::size_t y = 0; y < v; ++y) count += s.relations[i][x][y] * s.relations[j][y][z];
          long long& slot = p[owner[x][z]];
          if (slot < 0) {
            slot = count;
          } else if (slot != count) {
            throw Error(ErrorCode::invalid_input, "not a scheme: R_" + std::to_string(i) + " R_" + std::to_string(j) +
                                                      " is not in the span of the relations");
          }
        }
      for (std::size_t k = 0; k < r; ++k) lambda[(i * r + j) * r + k] = Scalar(Rational(p[k]));
    }
  Rba raw(r, std::move(lambda), std::move(star));
  std::vector<Scalar> valency;
  for (std::size_t i = 0; i < r; ++i) valency.push_back(raw.lambda(i, raw.star(i), 0));
  ToleranceConfig tol;
  return standardize(raw, make_degree_map(raw, std::move(valency), tol)).first;
}

SchemeRelations group_to_scheme(const CayleyTable& c) {
  SchemeRelations s;
  s.points = c.order;
  for (std::size_t g = 0; g < c.order; ++g) {
    std::vector<std::vector<int>> mat(c.order, std::vector<int>(c.order, 0));
    for (std::size_t x = 0; x < c.order; ++x) mat[x][c.table[x][g]] = 1;
    s.relations.push_back(std::move(mat));
  }
  return s;
}

}  // namespace rba
