#include "jsr/setfile.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace jsr {

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

namespace {

struct Token {
  std::string text;
  int line;
  int col;
};

// Lines of whitespace-separated tokens; '#' starts a comment.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> cur;
  int line = 1, col = 1;
  std::string tok;
  int tok_col = 0;
  bool comment = false;
  auto flush_tok = [&] {
    if (!tok.empty()) {
      cur.push_back({tok, line, tok_col});
      tok.clear();
    }
  };
  auto flush_line = [&] {
    flush_tok();
    if (!cur.empty()) lines.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush_line();
      ++line;
      col = 1;
      comment = false;
      continue;
    }
    if (comment) {
      ++col;
      continue;
    }
    if (c == '#') {
      flush_tok();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush_tok();
    } else {
      if (tok.empty()) tok_col = col;
      tok += c;
    }
    ++col;
  }
  flush_line();
  return lines;
}

bool parse_plain_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string z(s);
  char* end = nullptr;
  out = std::strtod(z.c_str(), &end);
  return end == z.c_str() + z.size();
}

// decimal or p/q rational
bool parse_real_part(std::string_view s, double& out, const Token& tk) {
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain_double(s, out);
  double p, q;
  if (!parse_plain_double(s.substr(0, slash), p) || !parse_plain_double(s.substr(slash + 1), q))
    return false;
  if (q == 0.0) throw ParseError("rational with zero denominator", tk.line, tk.col);
  out = p / q;
  return true;
}

// Splits "a+bi" style tokens: the imaginary part is everything from the last
// top-level sign onward; signs following e/E or '/' belong to the number.
cx parse_entry(const Token& tk, Field field) {
  std::string_view s = tk.text;
  if (s.empty()) throw ParseError("empty entry", tk.line, tk.col);
  if (s.back() != 'i' && s.back() != 'I') {
    double re;
    if (!parse_real_part(s, re, tk))
      throw ParseError("bad number '" + tk.text + "'", tk.line, tk.col);
    return cx(re, 0.0);
  }
  if (field == Field::Real)
    throw ParseError("complex entry '" + tk.text + "' in a real set", tk.line, tk.col);
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    const char c = s[i];
    if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '/') {
      split = i;
      break;
    }
  }
  double re = 0.0, im;
  std::string_view im_part = s;
  if (split != std::string_view::npos) {
    if (!parse_real_part(s.substr(0, split), re, tk))
      throw ParseError("bad number '" + tk.text + "'", tk.line, tk.col);
    im_part = s.substr(split);
  }
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else if (!parse_real_part(im_part, im, tk))
    throw ParseError("bad number '" + tk.text + "'", tk.line, tk.col);
  return cx(re, im);
}

bool looks_numeric(std::string_view s) {
  double x;
  if (parse_plain_double(s, x)) return true;
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '+' ||
                        s[0] == '-' || s[0] == '.');
}

}  // namespace

MatrixSet parse_set_file(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t li = 0;
  auto need_line = [&](const char* what) -> const std::vector<Token>& {
    if (li >= lines.size())
      throw ParseError(std::string("unexpected end of file, expected ") + what,
                       static_cast<int>(lines.size()) + 1, 1);
    return lines[li];
  };

  // field
  {
    const auto& l = need_line("'field real|complex'");
    if (l.size() != 2 || l[0].text != "field")
      throw ParseError("expected 'field real|complex'", l[0].line, l[0].col);
    if (l[1].text != "real" && l[1].text != "complex")
      throw ParseError("field must be 'real' or 'complex'", l[1].line, l[1].col);
  }
  const Field field = lines[li][1].text == "real" ? Field::Real : Field::Complex;
  ++li;

  // dim
  int d = 0;
  {
    const auto& l = need_line("'dim D'");
    if (l.size() != 2 || l[0].text != "dim")
      throw ParseError("expected 'dim D'", l[0].line, l[0].col);
    try {
      d = std::stoi(l[1].text);
    } catch (...) {
      throw ParseError("bad dimension '" + l[1].text + "'", l[1].line, l[1].col);
    }
    if (d < 2 || d > 16) throw ParseError("dimension must be in [2, 16]", l[1].line, l[1].col);
  }
  ++li;

  std::vector<std::pair<std::string, Matrix>> gens;
  while (li < lines.size()) {
    const auto& label_line = lines[li];
    if (label_line.size() != 1)
      throw ParseError("expected a generator label on its own line", label_line[0].line,
                       label_line[0].col);
    if (looks_numeric(label_line[0].text))
      throw ParseError("generator label '" + label_line[0].text + "' looks like a number",
                       label_line[0].line, label_line[0].col);
    const std::string label = label_line[0].text;
    ++li;

    std::vector<std::vector<cx>> rows;
    for (int r = 0; r < d; ++r) {
      const auto& l = need_line("a matrix row");
      if (static_cast<int>(l.size()) != d)
        throw ParseError("row has " + std::to_string(l.size()) + " entries, expected " +
                             std::to_string(d),
                         l[0].line, l[0].col);
      std::vector<cx> row;
      row.reserve(d);
      for (const Token& tk : l) row.push_back(parse_entry(tk, field));
      rows.push_back(std::move(row));
      ++li;
    }
    try {
      gens.emplace_back(label, Matrix::from_rows(field, rows));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), label_line[0].line, label_line[0].col);
    }
  }

  if (gens.size() < 2)
    throw ParseError("card(K) >= 2 required", static_cast<int>(lines.size()) + 1, 1);
  try {
    return MatrixSet(field, d, std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

MatrixSet load_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set_file(ss.str());
}

std::string emit_set_file(const MatrixSet& set) {
  std::ostringstream os;
  if (!set.name().empty()) os << "# " << set.name() << "\n";
  os << "field " << to_string(set.field()) << "\n";
  os << "dim " << set.dim() << "\n";
  for (int k = 0; k < set.size(); ++k) {
    os << set.label(k) << "\n";
    const Matrix& m = set.generator(k);
    for (int i = 0; i < set.dim(); ++i) {
      for (int j = 0; j < set.dim(); ++j) {
        if (j) os << ' ';
        const cx v = m(i, j);
        if (set.field() == Field::Real) {
          os << format_double(v.real());
        } else {
          os << format_double(v.real()) << (v.imag() < 0.0 ? "" : "+") << format_double(v.imag())
             << 'i';
        }
      }
      os << "\n";
    }
  }
  return os.str();
}

void save_set_file(const MatrixSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << emit_set_file(set);
}

std::vector<Word> parse_words_file(std::string_view text, int card) {
  std::vector<Word> words;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    if (!line.empty()) {
      try {
        words.push_back(Word::parse(line, card));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, 1);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return words;
}

std::vector<Word> load_words_file(const std::filesystem::path& path, int card) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_words_file(ss.str(), card);
}

}  // namespace jsr
