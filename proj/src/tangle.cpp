#include "tmt/tangle.hpp"

#include "tmt/error.hpp"

#include <sstream>

namespace tmt::tangle {

using alcove::Label;

alcove::Label oriented_label(const Marking& m) {
  return m.sign > 0 ? m.label : alcove::involution(m.label);
}

bool Generator::operator==(const Generator& o) const {
  if (kind != o.kind || pos != o.pos) return false;
  if (kind == Kind::braid && braid_sign != o.braid_sign) return false;
  if (kind == Kind::cup && !(cup_label == o.cup_label)) return false;
  return true;
}

int Generator::delta() const {
  switch (kind) {
    case Kind::braid: return 0;
    case Kind::cup: return 2;
    case Kind::cap: return -2;
    case Kind::merge: return -1;
    case Kind::split: return 1;
  }
  return 0;
}

int Generator::arity_in() const {
  switch (kind) {
    case Kind::braid: return 2;
    case Kind::cup: return 0;
    case Kind::cap: return 2;
    case Kind::merge: return 2;
    case Kind::split: return 1;
  }
  return 0;
}

int Generator::arity_out() const { return arity_in() + delta(); }

Generator braid(int pos, int sign) {
  Generator g;
  g.kind = Generator::Kind::braid;
  g.pos = pos;
  g.braid_sign = sign >= 0 ? +1 : -1;
  return g;
}

Generator cup(int pos, alcove::Label label) {
  Generator g;
  g.kind = Generator::Kind::cup;
  g.pos = pos;
  g.cup_label = std::move(label);
  return g;
}

Generator cap(int pos) {
  Generator g;
  g.kind = Generator::Kind::cap;
  g.pos = pos;
  return g;
}

Generator merge(int pos) {
  Generator g;
  g.kind = Generator::Kind::merge;
  g.pos = pos;
  return g;
}

Generator split(int pos) {
  Generator g;
  g.kind = Generator::Kind::split;
  g.pos = pos;
  return g;
}

bool TangleWord::operator==(const TangleWord& o) const {
  return group_rank == o.group_rank && genus == o.genus && incoming == o.incoming &&
         generators == o.generators;
}

std::vector<Marking> apply_generator(const std::vector<Marking>& level, const Generator& g,
                                     int group_rank) {
  const int n = static_cast<int>(level.size());
  const int i = g.pos;
  auto need = [&](bool ok) {
    if (!ok)
      fail(errc::invalid_index,
           "generator references strand " + std::to_string(i) + " of " + std::to_string(n));
  };
  std::vector<Marking> out = level;
  switch (g.kind) {
    case Generator::Kind::braid: {
      need(i >= 1 && i + 1 <= n);
      // The half-twist must preserve the labelling: the two strands have to
      // agree once orientation is normalized away.
      if (!(oriented_label(level[i - 1]) == oriented_label(level[i])))
        fail(errc::label_mismatch, "braid strands carry different labels");
      std::swap(out[i - 1], out[i]);
      return out;
    }
    case Generator::Kind::cup: {
      need(i >= 1 && i <= n + 1);
      if (!g.cup_label) fail(errc::bad_label, "cup without label");
      if (g.cup_label->rank() != group_rank) fail(errc::rank_mismatch, "cup label rank");
      out.insert(out.begin() + (i - 1),
                 {Marking{+1, *g.cup_label}, Marking{-1, alcove::involution(*g.cup_label)}});
      return out;
    }
    case Generator::Kind::cap: {
      need(i >= 1 && i + 1 <= n);
      const Marking& a = level[i - 1];
      const Marking& b = level[i];
      if (a.sign == b.sign || !(a.label == alcove::involution(b.label)))
        fail(errc::label_mismatch, "cap needs opposite orientations and involuted labels");
      out.erase(out.begin() + (i - 1), out.begin() + (i + 1));
      return out;
    }
    case Generator::Kind::merge: {
      need(i >= 1 && i + 1 <= n);
      if (group_rank < 3) fail(errc::bad_vertex_labels, "merge needs rank at least 3");
      Label one = alcove::half_vertex(group_rank, 1);
      const Marking& a = level[i - 1];
      const Marking& b = level[i];
      if (a.sign != b.sign || !(a.label == one) || !(b.label == one))
        fail(errc::bad_vertex_labels, "merge needs two equally oriented w1/2 strands");
      out.erase(out.begin() + i);
      out[i - 1] = Marking{a.sign, alcove::half_vertex(group_rank, 2)};
      return out;
    }
    case Generator::Kind::split: {
      need(i >= 1 && i <= n);
      if (group_rank < 3) fail(errc::bad_vertex_labels, "split needs rank at least 3");
      const Marking& a = level[i - 1];
      if (!(a.label == alcove::half_vertex(group_rank, 2)))
        fail(errc::bad_vertex_labels, "split needs a w2/2 strand");
      Marking leg{a.sign, alcove::half_vertex(group_rank, 1)};
      out[i - 1] = leg;
      out.insert(out.begin() + i, leg);
      return out;
    }
  }
  fail(errc::invalid_word, "unknown generator");
}

std::vector<std::vector<Marking>> propagate_labels(const TangleWord& w) {
  std::vector<std::vector<Marking>> levels;
  levels.push_back(w.incoming);
  for (const auto& g : w.generators)
    levels.push_back(apply_generator(levels.back(), g, w.group_rank));
  return levels;
}

std::pair<std::vector<Marking>, std::vector<Marking>> boundary_profile(const TangleWord& w) {
  auto levels = propagate_labels(w);
  return {levels.front(), levels.back()};
}

TangleWord concat(const TangleWord& w1, const TangleWord& w2) {
  if (w1.group_rank != w2.group_rank) fail(errc::rank_mismatch, "concat across groups");
  auto out1 = boundary_profile(w1).second;
  if (!(out1 == w2.incoming))
    fail(errc::boundary_mismatch, "outgoing(w1) != incoming(w2)");
  TangleWord w = w1;
  w.generators.insert(w.generators.end(), w2.generators.begin(), w2.generators.end());
  return w;
}

std::string marking_str(const Marking& m) {
  return (m.sign > 0 ? "+" : "-") + m.label.str();
}

namespace {

[[noreturn]] void syntax(int line, const std::string& what) {
  fail(errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

Generator parse_generator(const std::string& text, int r, int line) {
  std::istringstream ss(text);
  std::string kind;
  ss >> kind;
  auto read_pos = [&]() {
    int i;
    if (!(ss >> i)) syntax(line, "missing strand index after '" + kind + "'");
    return i;
  };
  if (kind == "braid") {
    int i = read_pos();
    std::string s;
    if (!(ss >> s) || (s != "+" && s != "-")) syntax(line, "braid needs a sign + or -");
    return braid(i, s == "+" ? +1 : -1);
  }
  if (kind == "cup") {
    int i = read_pos();
    std::string lbl;
    if (!(ss >> lbl)) syntax(line, "cup needs a label");
    return cup(i, alcove::parse_label(lbl, r));
  }
  if (kind == "cap") return cap(read_pos());
  if (kind == "merge") return merge(read_pos());
  if (kind == "split") return split(read_pos());
  syntax(line, "unknown generator '" + kind + "'");
}

}  // namespace

TangleWord parse(const std::string& text) {
  TangleWord w;
  bool saw_group = false;
  bool in_word = false;
  std::istringstream lines(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<std::string, int>> gen_tokens;
  while (std::getline(lines, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = raw;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.rfind("group", 0) == 0) {
      std::string g = line.substr(5);
      auto open = g.find("SU(");
      auto close = g.find(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        syntax(lineno, "expected group SU(<r>)");
      try {
        w.group_rank = std::stoi(g.substr(open + 3, close - open - 3));
      } catch (const std::exception&) {
        syntax(lineno, "bad rank in group line");
      }
      if (w.group_rank < 2) syntax(lineno, "rank must be at least 2");
      saw_group = true;
      continue;
    }
    if (line.rfind("genus", 0) == 0) {
      try {
        w.genus = std::stoi(line.substr(5));
      } catch (const std::exception&) {
        syntax(lineno, "bad genus");
      }
      if (w.genus < 0) syntax(lineno, "genus must be non-negative");
      continue;
    }
    if (line.rfind("marks:", 0) == 0) {
      if (!saw_group) syntax(lineno, "marks before group line");
      std::istringstream ms(line.substr(6));
      std::string tok;
      while (ms >> tok) {
        if (tok[0] != '+' && tok[0] != '-') syntax(lineno, "mark must start with + or -");
        w.incoming.push_back(
            Marking{tok[0] == '+' ? +1 : -1, alcove::parse_label(tok.substr(1), w.group_rank)});
      }
      continue;
    }
    if (line.rfind("word:", 0) == 0) {
      in_word = true;
      line = line.substr(5);
    } else if (!in_word) {
      syntax(lineno, "unexpected line '" + line + "'");
    }
    std::istringstream gs(line);
    std::string piece;
    while (std::getline(gs, piece, ';')) {
      if (piece.find_first_not_of(" \t") == std::string::npos) continue;
      gen_tokens.emplace_back(piece, lineno);
    }
  }
  if (!saw_group) fail(errc::parse_error, "missing group line");
  if (!in_word) fail(errc::parse_error, "missing word line");
  for (const auto& [tok, ln] : gen_tokens)
    w.generators.push_back(parse_generator(tok, w.group_rank, ln));
  propagate_labels(w);  // validate
  return w;
}

std::string serialize(const TangleWord& w) {
  std::string out = "group SU(" + std::to_string(w.group_rank) + ")\n";
  if (w.genus != 0) out += "genus " + std::to_string(w.genus) + "\n";
  out += "marks:";
  for (const auto& m : w.incoming) out += " " + marking_str(m);
  out += "\nword:";
  bool first = true;
  for (const auto& g : w.generators) {
    out += first ? " " : " ; ";
    first = false;
    switch (g.kind) {
      case Generator::Kind::braid:
        out += "braid " + std::to_string(g.pos) + (g.braid_sign > 0 ? " +" : " -");
        break;
      case Generator::Kind::cup:
        out += "cup " + std::to_string(g.pos) + " " + g.cup_label->str();
        break;
      case Generator::Kind::cap: out += "cap " + std::to_string(g.pos); break;
      case Generator::Kind::merge: out += "merge " + std::to_string(g.pos); break;
      case Generator::Kind::split: out += "split " + std::to_string(g.pos); break;
    }
  }
  out += "\n";
  return out;
}

}  // namespace tmt::tangle
