#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gmas/errors.hpp"
#include "gmas/network.hpp"
#include "gmas/numeric.hpp"

namespace gmas {

namespace {

// Single-line cursor with 1-based error locations.
class LineScanner {
 public:
  LineScanner(const std::string& text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      size_t after = pos_ + w.size();
      if (after >= text_.size() || !is_ident_char(text_[after])) {
        pos_ = after;
        return true;
      }
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }

  std::string identifier(const std::string& what) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected " + what);
    return text_.substr(start, pos_ - start);
  }

  bool looks_like_number() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return true;
    if ((c == '+' || c == '-') && pos_ + 1 < text_.size()) {
      char d = text_[pos_ + 1];
      return std::isdigit(static_cast<unsigned char>(d)) || d == '.';
    }
    return false;
  }

  double number(const std::string& what) {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected " + what);
    pos_ += static_cast<size_t>(end - begin);
    return v;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, line_, static_cast<int>(pos_) + 1);
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

 private:
  const std::string& text_;
  int line_;
  size_t pos_ = 0;
};

struct PendingEdge {
  std::string from, to;
  bool reversible = false;
  bool has_rates = false;
  double kf = 0.0, kb = 0.0;
  int line = 0;
};

class NetworkParser {
 public:
  ParsedNetwork parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      LineScanner sc(raw, line_no);
      if (sc.at_end()) continue;
      if (sc.consume_word("species")) {
        parse_species(sc);
      } else if (sc.consume_word("vertex")) {
        parse_vertex(sc, line_no);
      } else if (sc.consume_word("edge")) {
        parse_edge(sc, line_no);
      } else {
        sc.fail("expected 'species', 'vertex', or 'edge'");
      }
    }
    return finish();
  }

 private:
  void parse_species(LineScanner& sc) {
    sc.expect(':', "after 'species'");
    if (!net_.species.empty())
      sc.fail("duplicate species line");
    while (!sc.at_end()) {
      std::string name = sc.identifier("species name");
      if (species_index_.count(name)) sc.fail("duplicate species name '" + name + "'");
      species_index_[name] = static_cast<int>(net_.species.size());
      net_.species.push_back(name);
    }
    if (net_.species.empty()) sc.fail("species line declares no species");
  }

  Eigen::VectorXd parse_complex(LineScanner& sc) {
    if (net_.species.empty()) sc.fail("species must be declared before complexes");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<int>(net_.species.size()));
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (sc.peek() == '+' || sc.peek() == '-') {
        if (sc.consume('-')) sign = -1.0;
        else sc.consume('+');
      } else if (!first) {
        break;
      }
      double coef = 1.0;
      bool had_number = false;
      if (sc.looks_like_number()) {
        coef = sc.number("coefficient");
        had_number = true;
      }
      sc.consume('*');
      char c = sc.peek();
      if (LineScanner::is_ident_char(c) &&
          !(had_number && (std::isdigit(static_cast<unsigned char>(c)) || c == '.'))) {
        std::string name = sc.identifier("species name");
        auto it = species_index_.find(name);
        if (it == species_index_.end()) sc.fail("undeclared species '" + name + "'");
        v[it->second] += sign * coef;
      } else if (had_number && coef == 0.0) {
        // bare 0: the empty complex
      } else if (had_number) {
        sc.fail("coefficient without species name");
      } else {
        sc.fail("expected complex term");
      }
      first = false;
      if (sc.peek() != '+' && sc.peek() != '-') break;
    }
    return v;
  }

  void parse_vertex(LineScanner& sc, int line_no) {
    (void)line_no;
    std::string name = sc.identifier("vertex name");
    if (vertex_index_.count(name)) sc.fail("duplicate vertex name '" + name + "'");
    sc.expect(':', "after vertex name");
    if (!sc.consume_word("stoich")) sc.fail("expected 'stoich'");
    sc.expect('=', "after 'stoich'");
    ComplexPair cp;
    cp.stoich = parse_complex(sc);
    if (sc.consume(',')) {
      if (!sc.consume_word("kinetic")) sc.fail("expected 'kinetic'");
      sc.expect('=', "after 'kinetic'");
      cp.kinetic = parse_complex(sc);
    }
    if (!sc.at_end()) sc.fail("unexpected trailing text on vertex line");
    vertex_index_[name] = static_cast<int>(net_.vertices.size());
    net_.vertex_names.push_back(name);
    net_.vertices.push_back(std::move(cp));
  }

  void parse_edge(LineScanner& sc, int line_no) {
    PendingEdge pe;
    pe.line = line_no;
    pe.from = sc.identifier("vertex name");
    if (sc.consume('<')) {
      sc.expect('-', "in '<->'");
      sc.expect('>', "in '<->'");
      pe.reversible = true;
    } else {
      sc.expect('-', "in '->'");
      sc.expect('>', "in '->'");
    }
    pe.to = sc.identifier("vertex name");
    if (sc.consume(':')) {
      if (!sc.consume_word("k")) sc.fail("expected 'k'");
      sc.expect('=', "after 'k'");
      pe.kf = sc.number("rate constant");
      pe.has_rates = true;
      if (pe.reversible) {
        sc.expect(',', "between forward and backward rates");
        pe.kb = sc.number("rate constant");
      } else if (sc.consume(',')) {
        sc.fail("one rate expected for a one-way edge");
      }
      if (pe.kf <= 0.0 || (pe.reversible && pe.kb <= 0.0))
        sc.fail("rate constants must be positive");
    }
    if (!sc.at_end()) sc.fail("unexpected trailing text on edge line");
    pending_edges_.push_back(std::move(pe));
  }

  ParsedNetwork finish() {
    std::vector<double> rates;
    int with_rates = 0;
    for (const PendingEdge& pe : pending_edges_) {
      auto from = vertex_index_.find(pe.from);
      auto to = vertex_index_.find(pe.to);
      if (from == vertex_index_.end())
        throw ParseError("edge references undeclared vertex '" + pe.from + "'", pe.line, 1);
      if (to == vertex_index_.end())
        throw ParseError("edge references undeclared vertex '" + pe.to + "'", pe.line, 1);
      net_.edges.push_back({from->second, to->second});
      rates.push_back(pe.kf);
      if (pe.reversible) {
        net_.edges.push_back({to->second, from->second});
        rates.push_back(pe.kb);
      }
      if (pe.has_rates) with_rates += pe.reversible ? 2 : 1;
    }
    if (with_rates != 0 && with_rates != static_cast<int>(rates.size()))
      throw ValidationError("either all edges or no edges may carry rate constants");

    // Mass-action default: a source vertex without an explicit kinetic
    // complex uses its stoichiometric complex.
    for (int i = 0; i < net_.num_vertices(); ++i) {
      auto& v = net_.vertices[static_cast<std::size_t>(i)];
      if (net_.is_source(i) && !v.kinetic) v.kinetic = v.stoich;
    }

    validate(net_);

    ParsedNetwork out;
    out.network = std::move(net_);
    if (with_rates != 0) {
      RateAssignment ra;
      ra.k = Eigen::Map<Eigen::VectorXd>(rates.data(), static_cast<int>(rates.size()));
      out.rates = std::move(ra);
    }
    return out;
  }

  GmasNetwork net_;
  std::map<std::string, int> species_index_;
  std::map<std::string, int> vertex_index_;
  std::vector<PendingEdge> pending_edges_;
};

std::string format_complex(const Eigen::VectorXd& v, const std::vector<std::string>& species) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != 1.0) {
      out += format_double(v[i]);
      out += ' ';
    }
    out += species[static_cast<size_t>(i)];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

ParsedNetwork parse_network(const std::string& text) {
  NetworkParser parser;
  return parser.parse(text);
}

std::string serialize_network(const GmasNetwork& net,
                              const std::optional<RateAssignment>& rates) {
  if (rates && rates->k.size() != net.num_edges())
    throw DimensionError("rate vector length does not match edge count");
  std::string out = "species:";
  for (const std::string& s : net.species) {
    out += ' ';
    out += s;
  }
  out += '\n';
  for (int i = 0; i < net.num_vertices(); ++i) {
    const std::string name = net.vertex_names.empty()
                                 ? "v" + std::to_string(i + 1)
                                 : net.vertex_names[static_cast<size_t>(i)];
    out += "vertex " + name + ": stoich = " +
           format_complex(net.vertices[i].stoich, net.species);
    // Omit a kinetic complex that matches the mass-action default.
    if (net.vertices[i].kinetic &&
        !(*net.vertices[i].kinetic - net.vertices[i].stoich).isZero(0.0))
      out += ", kinetic = " + format_complex(*net.vertices[i].kinetic, net.species);
    out += '\n';
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    const std::string from = net.vertex_names.empty()
                                 ? "v" + std::to_string(net.edges[e].from + 1)
                                 : net.vertex_names[static_cast<size_t>(net.edges[e].from)];
    const std::string to = net.vertex_names.empty()
                               ? "v" + std::to_string(net.edges[e].to + 1)
                               : net.vertex_names[static_cast<size_t>(net.edges[e].to)];
    out += "edge " + from + " -> " + to;
    if (rates) out += " : k = " + format_double(rates->k[e]);
    out += '\n';
  }
  return out;
}

}  // namespace gmas
