#include "nsbox/serdes.hpp"

#include <charconv>
#include <sstream>

namespace nsbox {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  return v;
}

BigInt parse_bigint(const std::string& tok, int line) {
  if (tok.empty()) throw ParseError(line, "empty integer");
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) throw ParseError(line, "malformed integer '" + tok + "'");
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') {
      throw ParseError(line, "malformed integer '" + tok + "'");
    }
  }
  return BigInt(tok);
}

// "num/den"; strict additionally demands the canonical spelling (lowest
// terms, positive denominator).
Rational parse_rational(const std::string& tok, int line, bool strict) {
  const size_t slash = tok.find('/');
  if (slash == std::string::npos || slash == 0 || slash == tok.size() - 1) {
    throw ParseError(line, "malformed rational '" + tok + "' (want num/den)");
  }
  const BigInt num = parse_bigint(tok.substr(0, slash), line);
  const BigInt den = parse_bigint(tok.substr(slash + 1), line);
  if (den == 0) throw ParseError(line, "malformed rational '" + tok + "' (zero denominator)");
  Rational r(num, den);
  if (strict && r.str() != tok) {
    throw ParseError(line, "rational '" + tok + "' is not in canonical form (want " + r.str() +
                               ")");
  }
  return r;
}

struct DocEntry {
  int x, y, a, b;
  Rational v;
  int line;
};

struct BoxDocument {
  int x_size, y_size, a_size, b_size;
  std::vector<DocEntry> entries;
  int sizes_line;
};

// Syntax, ranges, duplicates, ordering; everything except normalization.
BoxDocument parse_box_document(const std::vector<std::string>& lines, int offset, size_t& used,
                               bool strict, bool stop_at_endbox) {
  size_t i = 0;
  auto line_no = [&](size_t k) { return offset + int(k) + 1; };
  if (i >= lines.size()) throw ParseError(line_no(0), "missing 'nsbox' header");
  {
    const auto toks = tokens_of(lines[i]);
    if (toks.size() != 2 || toks[0] != "nsbox") {
      throw ParseError(line_no(i), "missing 'nsbox <version>' header");
    }
    if (toks[1] != "1") throw ParseError(line_no(i), "unknown nsbox version '" + toks[1] + "'");
  }
  ++i;
  BoxDocument doc;
  if (i >= lines.size()) throw ParseError(line_no(i), "missing 'sizes' line");
  {
    const auto toks = tokens_of(lines[i]);
    if (toks.size() != 5 || toks[0] != "sizes") {
      throw ParseError(line_no(i), "expected 'sizes <X> <Y> <A> <B>'");
    }
    doc.x_size = parse_int(toks[1], line_no(i));
    doc.y_size = parse_int(toks[2], line_no(i));
    doc.a_size = parse_int(toks[3], line_no(i));
    doc.b_size = parse_int(toks[4], line_no(i));
    if (doc.x_size < 1 || doc.y_size < 1 || doc.a_size < 1 || doc.b_size < 1) {
      throw ParseError(line_no(i), "sizes must be positive");
    }
    doc.sizes_line = line_no(i);
  }
  ++i;
  std::vector<bool> seen(size_t(doc.x_size) * doc.y_size * doc.a_size * doc.b_size, false);
  long long last_key = -1;
  for (; i < lines.size(); ++i) {
    if (stop_at_endbox && tokens_of(lines[i]) == std::vector<std::string>{"endbox"}) break;
    if (lines[i].empty() && i + 1 == lines.size()) break;  // trailing newline
    const auto toks = tokens_of(lines[i]);
    if (toks.empty()) throw ParseError(line_no(i), "blank line inside box document");
    if (toks[0] != "p" || toks.size() != 6) {
      if (!stop_at_endbox) {
        throw ParseError(line_no(i), "expected 'p <x> <y> <a> <b> <num>/<den>'");
      }
      break;  // inner document ended without 'endbox'; caller reports it
    }
    DocEntry e;
    e.x = parse_int(toks[1], line_no(i));
    e.y = parse_int(toks[2], line_no(i));
    e.a = parse_int(toks[3], line_no(i));
    e.b = parse_int(toks[4], line_no(i));
    e.line = line_no(i);
    if (e.x < 0 || e.x >= doc.x_size || e.y < 0 || e.y >= doc.y_size || e.a < 0 ||
        e.a >= doc.a_size || e.b < 0 || e.b >= doc.b_size) {
      throw ParseError(line_no(i), "entry indices out of range for the declared sizes");
    }
    e.v = parse_rational(toks[5], line_no(i), strict);
    if (e.v < 0 || e.v > 1) {
      throw ParseError(line_no(i), "probability " + e.v.str() + " outside [0,1]");
    }
    const long long key =
        ((1LL * e.x * doc.y_size + e.y) * doc.a_size + e.a) * doc.b_size + e.b;
    if (seen[size_t(key)]) {
      throw ParseError(line_no(i), "duplicate entry for (x,y,a,b)");
    }
    seen[size_t(key)] = true;
    if (strict) {
      if (e.v.is_zero()) {
        throw ParseError(line_no(i), "explicit zero entry (zeros are omitted)");
      }
      if (key <= last_key) {
        throw ParseError(line_no(i), "entries out of order (sorted by x,y,a,b)");
      }
    }
    last_key = key;
    if (!e.v.is_zero()) doc.entries.push_back(std::move(e));
  }
  used = i;
  return doc;
}

// Normalization check; returns per-block problems instead of throwing.
std::vector<std::string> block_problems(const BoxDocument& doc) {
  std::vector<std::string> problems;
  for (int x = 0; x < doc.x_size; ++x) {
    for (int y = 0; y < doc.y_size; ++y) {
      Rational sum = 0;
      for (const DocEntry& e : doc.entries) {
        if (e.x == x && e.y == y) sum += e.v;
      }
      if (sum != 1) {
        std::ostringstream os;
        os << "block (x=" << x << ",y=" << y << ") sums to " << sum << ", not 1";
        problems.push_back(os.str());
      }
    }
  }
  return problems;
}

NsBox box_from_document(const BoxDocument& doc) {
  const auto problems = block_problems(doc);
  if (!problems.empty()) {
    // Point at the last entry of the first bad block, or the sizes line for
    // an empty block.
    int at = doc.sizes_line;
    for (const DocEntry& e : doc.entries) at = std::max(at, e.line);
    throw ParseError(at, problems.front());
  }
  BoxBuilder bld(doc.x_size, doc.y_size, doc.a_size, doc.b_size);
  for (const DocEntry& e : doc.entries) bld.set(e.x, e.y, e.a, e.b, e.v);
  return std::move(bld).build();
}

}  // namespace

std::string write_box(const NsBox& box) {
  std::ostringstream os;
  os << "nsbox 1\n";
  os << "sizes " << box.x_size() << " " << box.y_size() << " " << box.a_size() << " "
     << box.b_size() << "\n";
  for (int x = 0; x < box.x_size(); ++x)
    for (int y = 0; y < box.y_size(); ++y)
      for (int a = 0; a < box.a_size(); ++a)
        for (int b = 0; b < box.b_size(); ++b) {
          const Rational& v = box.at(x, y, a, b);
          if (v.is_zero()) continue;
          os << "p " << x << " " << y << " " << a << " " << b << " " << v.str() << "\n";
        }
  return os.str();
}

NsBox parse_box(const std::string& text, bool strict) {
  const auto lines = split_lines(text);
  size_t used = 0;
  BoxDocument doc = parse_box_document(lines, 0, used, strict, false);
  for (size_t i = used; i < lines.size(); ++i) {
    if (!tokens_of(lines[i]).empty()) {
      throw ParseError(int(i) + 1, "unexpected content after box entries");
    }
  }
  return box_from_document(doc);
}

VerifyReport verify_box_document(const std::string& text) {
  const auto lines = split_lines(text);
  size_t used = 0;
  BoxDocument doc = parse_box_document(lines, 0, used, /*strict=*/false, false);
  for (size_t i = used; i < lines.size(); ++i) {
    if (!tokens_of(lines[i]).empty()) {
      throw ParseError(int(i) + 1, "unexpected content after box entries");
    }
  }
  VerifyReport rep;
  rep.normalization_problems = block_problems(doc);
  rep.normalization = rep.normalization_problems.empty();
  if (rep.normalization) {
    rep.ns = check_no_signaling(box_from_document(doc));
  }
  return rep;
}

namespace {

void write_input_map(std::ostringstream& os, const char* who, size_t stage, const InputMap& m) {
  os << "inmap " << who << " " << stage << " reads";
  for (int r : m.reads) os << " " << r;
  os << " ;";
  for (int v : m.table) os << " " << v;
  os << "\n";
}

std::vector<int> parse_int_list(const std::vector<std::string>& toks, size_t from, int line) {
  std::vector<int> vals;
  for (size_t i = from; i < toks.size(); ++i) vals.push_back(parse_int(toks[i], line));
  return vals;
}

}  // namespace

std::string write_wiring(const Wiring& w) {
  validate_wiring(w);
  std::ostringstream os;
  os << "nswire 1\n";
  os << "external " << w.x_size << " " << w.y_size << "\n";
  os << "final " << w.alice_output.out_size << " " << w.bob_output.out_size << "\n";
  os << "boxes " << w.boxes.size() << "\n";
  for (size_t i = 0; i < w.boxes.size(); ++i) {
    os << "box " << i << " inline\n";
    os << write_box(w.boxes[i]);
    os << "endbox\n";
  }
  os << "order alice";
  for (int v : w.alice_order) os << " " << v;
  os << "\norder bob";
  for (int v : w.bob_order) os << " " << v;
  os << "\n";
  for (size_t s = 0; s < w.alice_inputs.size(); ++s) {
    write_input_map(os, "alice", s, w.alice_inputs[s]);
  }
  for (size_t s = 0; s < w.bob_inputs.size(); ++s) {
    write_input_map(os, "bob", s, w.bob_inputs[s]);
  }
  os << "outmap alice";
  for (int v : w.alice_output.table) os << " " << v;
  os << "\noutmap bob";
  for (int v : w.bob_output.table) os << " " << v;
  os << "\n";
  return os.str();
}

Wiring parse_wiring(const std::string& text, bool strict) {
  const auto lines = split_lines(text);
  size_t i = 0;
  auto line_no = [&](size_t k) { return int(k) + 1; };
  auto need_line = [&](const char* what) {
    while (i < lines.size() && tokens_of(lines[i]).empty() && i + 1 == lines.size()) ++i;
    if (i >= lines.size()) {
      throw ParseError(line_no(i), std::string("missing ") + what + " (truncated document)");
    }
    return tokens_of(lines[i]);
  };

  {
    const auto toks = need_line("'nswire' header");
    if (toks.size() != 2 || toks[0] != "nswire") {
      throw ParseError(line_no(i), "missing 'nswire <version>' header");
    }
    if (toks[1] != "1") throw ParseError(line_no(i), "unknown nswire version '" + toks[1] + "'");
    ++i;
  }
  Wiring w;
  {
    const auto toks = need_line("'external' line");
    if (toks.size() != 3 || toks[0] != "external") {
      throw ParseError(line_no(i), "expected 'external <X> <Y>'");
    }
    w.x_size = parse_int(toks[1], line_no(i));
    w.y_size = parse_int(toks[2], line_no(i));
    ++i;
  }
  int final_a, final_b;
  {
    const auto toks = need_line("'final' line");
    if (toks.size() != 3 || toks[0] != "final") {
      throw ParseError(line_no(i), "expected 'final <A> <B>'");
    }
    final_a = parse_int(toks[1], line_no(i));
    final_b = parse_int(toks[2], line_no(i));
    ++i;
  }
  size_t n_boxes;
  {
    const auto toks = need_line("'boxes' line");
    if (toks.size() != 2 || toks[0] != "boxes") {
      throw ParseError(line_no(i), "expected 'boxes <n>'");
    }
    const int n = parse_int(toks[1], line_no(i));
    if (n < 1) throw ParseError(line_no(i), "wiring needs at least one box");
    n_boxes = size_t(n);
    ++i;
  }
  for (size_t bi = 0; bi < n_boxes; ++bi) {
    const auto toks = need_line("'box' line");
    if (toks.size() != 3 || toks[0] != "box" || toks[2] != "inline") {
      throw ParseError(line_no(i), "expected 'box " + std::to_string(bi) + " inline'");
    }
    if (parse_int(toks[1], line_no(i)) != int(bi)) {
      throw ParseError(line_no(i), "boxes must appear in index order");
    }
    ++i;
    size_t used = 0;
    std::vector<std::string> rest(lines.begin() + i, lines.end());
    BoxDocument doc = parse_box_document(rest, int(i), used, strict, true);
    w.boxes.push_back(box_from_document(doc));
    i += used;
    const auto end_toks = need_line("'endbox'");
    if (end_toks != std::vector<std::string>{"endbox"}) {
      throw ParseError(line_no(i), "expected 'endbox'");
    }
    ++i;
  }
  for (const char* who : {"alice", "bob"}) {
    const auto toks = need_line("'order' line");
    if (toks.size() < 2 || toks[0] != "order" || toks[1] != who) {
      throw ParseError(line_no(i), std::string("expected 'order ") + who + " ...'");
    }
    auto& order = toks[1] == "alice" ? w.alice_order : w.bob_order;
    order = parse_int_list(toks, 2, line_no(i));
    ++i;
  }
  w.alice_inputs.resize(n_boxes);
  w.bob_inputs.resize(n_boxes);
  for (const char* who : {"alice", "bob"}) {
    for (size_t stage = 0; stage < n_boxes; ++stage) {
      const auto toks = need_line("'inmap' line");
      if (toks.size() < 4 || toks[0] != "inmap" || toks[1] != who) {
        throw ParseError(line_no(i), std::string("expected 'inmap ") + who + " " +
                                         std::to_string(stage) + " reads ... ; ...'");
      }
      if (parse_int(toks[2], line_no(i)) != int(stage)) {
        throw ParseError(line_no(i), "inmap stages must appear in order");
      }
      if (toks[3] != "reads") throw ParseError(line_no(i), "expected 'reads' keyword");
      size_t semi = 4;
      while (semi < toks.size() && toks[semi] != ";") ++semi;
      if (semi == toks.size()) throw ParseError(line_no(i), "missing ';' in inmap line");
      InputMap m;
      for (size_t k = 4; k < semi; ++k) m.reads.push_back(parse_int(toks[k], line_no(i)));
      m.table = parse_int_list(toks, semi + 1, line_no(i));
      (toks[1] == "alice" ? w.alice_inputs : w.bob_inputs)[stage] = std::move(m);
      ++i;
    }
  }
  for (const char* who : {"alice", "bob"}) {
    const auto toks = need_line("'outmap' line");
    if (toks.size() < 2 || toks[0] != "outmap" || toks[1] != who) {
      throw ParseError(line_no(i), std::string("expected 'outmap ") + who + " ...'");
    }
    OutputMap m;
    m.out_size = toks[1] == "alice" ? final_a : final_b;
    m.table = parse_int_list(toks, 2, line_no(i));
    (toks[1] == "alice" ? w.alice_output : w.bob_output) = std::move(m);
    ++i;
  }
  for (; i < lines.size(); ++i) {
    if (!tokens_of(lines[i]).empty()) {
      throw ParseError(line_no(i), "unexpected content after wiring sections");
    }
  }
  try {
    validate_wiring(w);
  } catch (const Error& e) {
    throw ParseError(line_no(lines.size() - 1), std::string("inconsistent wiring: ") + e.what());
  }
  return w;
}

}  // namespace nsbox
