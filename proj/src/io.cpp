#include "loopforms/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "loopforms/errors.hpp"

namespace loopforms::io {

namespace {

struct Line {
  int number;
  std::string key;
  std::vector<std::string> values;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line line;
    line.number = number;
    if (!(ls >> line.key)) continue;
    std::string tok;
    while (ls >> tok) line.values.push_back(tok);
    lines.push_back(std::move(line));
  }
  return lines;
}

Int parse_int(const Line& line, const std::string& tok) {
  try {
    size_t pos = 0;
    // cpp_int accepts an optional sign and digits; reject trailing junk.
    for (char ch : tok) {
      if (pos == 0 && (ch == '+' || ch == '-')) { ++pos; continue; }
      if (ch < '0' || ch > '9') throw std::runtime_error("not a digit");
      ++pos;
    }
    if (tok.empty() || (tok.size() == 1 && (tok[0] == '+' || tok[0] == '-')))
      throw std::runtime_error("empty");
    return Int(tok[0] == '+' ? tok.substr(1) : tok);
  } catch (const std::exception&) {
    throw ParseError(line.number, "field '" + line.key + "': '" + tok +
                                      "' is not a decimal integer");
  }
}

int parse_sign(const Line& line, const std::string& tok) {
  if (tok == "+1" || tok == "1") return 1;
  if (tok == "-1") return -1;
  throw ParseError(line.number, "field '" + line.key + "': expected +1 or -1, got '" + tok + "'");
}

}  // namespace

std::string exception_flag_name(plumbing::ExceptionFlag flag) {
  switch (flag) {
    case plumbing::ExceptionFlag::None: return "none";
    case plumbing::ExceptionFlag::PseudofreeP3B1: return "pseudofree-p3-b1";
    case plumbing::ExceptionFlag::FixedPointFreeP2Hyperbolic:
      return "fixed-point-free-p2-hyperbolic";
  }
  return "?";
}

plumbing::SingularSetData parse_singular_data(std::istream& in) {
  long p = 0;
  bool have_p = false;
  int orientation = 1;
  plumbing::ExceptionFlag exception = plumbing::ExceptionFlag::None;
  std::vector<plumbing::SphereData> spheres;

  for (const Line& line : tokenize(in)) {
    if (line.key == "p") {
      if (line.values.size() != 1) throw ParseError(line.number, "p takes one value");
      Int v = parse_int(line, line.values[0]);
      if (v < 2 || v > 1000000000) throw ParseError(line.number, "p out of range");
      p = v.convert_to<long>();
      have_p = true;
    } else if (line.key == "orientation") {
      if (line.values.size() != 1) throw ParseError(line.number, "orientation takes one value");
      orientation = parse_sign(line, line.values[0]);
    } else if (line.key == "sphere") {
      if (line.values.size() != 2)
        throw ParseError(line.number, "sphere takes an euler number and a sign");
      spheres.push_back({parse_int(line, line.values[0]), parse_sign(line, line.values[1])});
    } else if (line.key == "exception") {
      if (line.values.size() != 1) throw ParseError(line.number, "exception takes one value");
      const std::string& v = line.values[0];
      if (v == "none") exception = plumbing::ExceptionFlag::None;
      else if (v == "pseudofree-p3-b1") exception = plumbing::ExceptionFlag::PseudofreeP3B1;
      else if (v == "fixed-point-free-p2-hyperbolic")
        exception = plumbing::ExceptionFlag::FixedPointFreeP2Hyperbolic;
      else throw ParseError(line.number, "unknown exception flag '" + v + "'");
    } else {
      throw ParseError(line.number, "unknown key '" + line.key + "' in singular-set document");
    }
  }
  if (!have_p) throw ParseError(0, "missing required key 'p'");
  try {
    return plumbing::SingularSetData(p, std::move(spheres), orientation, exception);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

plumbing::SingularSetData parse_singular_data(const std::string& text) {
  std::istringstream in(text);
  return parse_singular_data(in);
}

std::string write_singular_data(const plumbing::SingularSetData& data) {
  std::ostringstream os;
  os << "p " << data.p() << "\n";
  os << "orientation " << (data.orientation() > 0 ? "+1" : "-1") << "\n";
  if (data.exception() != plumbing::ExceptionFlag::None)
    os << "exception " << exception_flag_name(data.exception()) << "\n";
  for (const auto& s : data.spheres())
    os << "sphere " << s.euler << " " << (s.sign > 0 ? "+1" : "-1") << "\n";
  return os.str();
}

forms::SymmetricForm parse_form(std::istream& in) {
  int n = -1;
  std::vector<std::vector<Int>> rows;
  for (const Line& line : tokenize(in)) {
    if (line.key == "rank") {
      if (line.values.size() != 1) throw ParseError(line.number, "rank takes one value");
      Int v = parse_int(line, line.values[0]);
      if (v < 1 || v > 1024) throw ParseError(line.number, "rank out of range");
      n = v.convert_to<int>();
    } else if (line.key == "row") {
      if (n < 0) throw ParseError(line.number, "row before rank");
      if (static_cast<int>(line.values.size()) != n)
        throw ParseError(line.number, "row needs exactly " + std::to_string(n) + " entries");
      std::vector<Int> row;
      for (const auto& tok : line.values) row.push_back(parse_int(line, tok));
      rows.push_back(std::move(row));
    } else {
      throw ParseError(line.number, "unknown key '" + line.key + "' in form document");
    }
  }
  if (n < 0) throw ParseError(0, "missing required key 'rank'");
  if (static_cast<int>(rows.size()) != n)
    throw ParseError(0, "expected " + std::to_string(n) + " rows, got " +
                            std::to_string(rows.size()));
  try {
    return forms::SymmetricForm(rows);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

forms::SymmetricForm parse_form(const std::string& text) {
  std::istringstream in(text);
  return parse_form(in);
}

std::string write_form(const forms::SymmetricForm& form) {
  std::ostringstream os;
  os << "rank " << form.dimension() << "\n";
  for (int i = 0; i < form.dimension(); ++i) {
    os << "row";
    for (int j = 0; j < form.dimension(); ++j) os << " " << form.at(i, j);
    os << "\n";
  }
  return os.str();
}

std::string sniff_document_kind(const std::string& text) {
  std::istringstream in(text);
  auto lines = tokenize(in);
  if (lines.empty()) throw ParseError(0, "empty document");
  const std::string& k = lines.front().key;
  if (k == "rank" || k == "row") return "form";
  if (k == "p" || k == "sphere" || k == "orientation" || k == "exception") return "singular";
  throw ParseError(lines.front().number, "unrecognized document (first key '" + k + "')");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace loopforms::io
