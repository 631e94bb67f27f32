#include "diriop/mapspec.hpp"

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <string_view>
#include <vector>

namespace diriop {
namespace {

struct Field {
  std::string_view text;
  std::size_t offset;  // absolute position of text[0] in the original spec
};

Field trimmed(std::string_view s, std::size_t offset) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {s.substr(b, e - b), offset + b};
}

std::vector<Field> split_commas(const Field& f) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= f.text.size(); ++i) {
    if (i == f.text.size() || f.text[i] == ',') {
      out.push_back(trimmed(f.text.substr(start, i - start), f.offset + start));
      start = i + 1;
    }
  }
  return out;
}

// Parses a real number starting at s[pos]; advances pos past it.
double parse_real_prefix(const Field& f, std::size_t& pos) {
  const char* begin = f.text.data() + pos;
  const char* end = f.text.data() + f.text.size();
  double value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc()) throw SpecParseError("expected a number", f.offset + pos);
  pos += static_cast<std::size_t>(ptr - begin);
  return value;
}

double parse_real_field(const Field& f) {
  if (f.text.empty()) throw SpecParseError("empty number", f.offset);
  std::size_t pos = 0;
  double v = parse_real_prefix(f, pos);
  if (pos != f.text.size()) throw SpecParseError("trailing characters after number", f.offset + pos);
  return v;
}

// Complex literal: [sign] ( "i" | number [ "i" | sign ( "i" | number "i" ) ] )
std::complex<double> parse_complex_field(const Field& f) {
  if (f.text.empty()) throw SpecParseError("empty complex literal", f.offset);
  std::size_t pos = 0;
  auto take_sign = [&]() -> double {
    if (pos < f.text.size() && (f.text[pos] == '+' || f.text[pos] == '-'))
      return f.text[pos++] == '-' ? -1.0 : 1.0;
    return 1.0;
  };
  auto at_i = [&]() { return pos < f.text.size() && f.text[pos] == 'i'; };

  double sign1 = take_sign();
  if (at_i()) {
    ++pos;
    if (pos != f.text.size())
      throw SpecParseError("trailing characters after imaginary unit", f.offset + pos);
    return {0.0, sign1};
  }
  double first = sign1 * parse_real_prefix(f, pos);
  if (pos == f.text.size()) return {first, 0.0};
  if (at_i()) {
    ++pos;
    if (pos != f.text.size())
      throw SpecParseError("trailing characters after imaginary part", f.offset + pos);
    return {0.0, first};
  }
  if (f.text[pos] != '+' && f.text[pos] != '-')
    throw SpecParseError("expected '+', '-', or 'i'", f.offset + pos);
  double sign2 = take_sign();
  double second;
  if (at_i()) {
    second = 1.0;
  } else {
    second = parse_real_prefix(f, pos);
    if (!at_i()) throw SpecParseError("expected 'i' after imaginary part", f.offset + pos);
  }
  ++pos;  // consume 'i'
  if (pos != f.text.size())
    throw SpecParseError("trailing characters after complex literal", f.offset + pos);
  return {first, sign2 * second};
}

// "key=value"; checks the key and returns the value field.
Field keyed(const Field& f, std::string_view key) {
  auto eq = f.text.find('=');
  if (eq == std::string_view::npos) throw SpecParseError("expected 'key=value'", f.offset);
  Field k = trimmed(f.text.substr(0, eq), f.offset);
  if (k.text != key)
    throw SpecParseError(std::string("expected key '") + std::string(key) + "'", k.offset);
  return trimmed(f.text.substr(eq + 1), f.offset + eq + 1);
}

}  // namespace

MobiusMapd parse_map_spec(const std::string& spec) {
  Field all = trimmed(spec, 0);
  if (all.text.empty()) throw SpecParseError("empty map specification", 0);

  if (all.text == "id") return MobiusMapd::identity();

  if (all.text.starts_with("rot:")) {
    Field arg = trimmed(all.text.substr(4), all.offset + 4);
    return MobiusMapd::rotation(parse_real_field(arg));
  }

  if (all.text.starts_with("hyp:")) {
    Field arg = trimmed(all.text.substr(4), all.offset + 4);
    Field value = keyed(arg, "t");
    double t = parse_real_field(value);
    if (!(std::abs(t) < 1.0)) throw SpecParseError("hyp: requires |t| < 1", value.offset);
    return MobiusMapd::hyperbolic_shift(t);
  }

  if (all.text.starts_with("auto:")) {
    Field arg = trimmed(all.text.substr(5), all.offset + 5);
    auto parts = split_commas(arg);
    if (parts.size() != 2)
      throw SpecParseError("auto: requires 'a=<complex>,theta=<real>'", arg.offset);
    std::complex<double> a = parse_complex_field(keyed(parts[0], "a"));
    double theta = parse_real_field(keyed(parts[1], "theta"));
    if (!(std::abs(a) < 1.0)) throw SpecParseError("auto: requires |a| < 1", parts[0].offset);
    return AutomorphismFormd(a, theta).to_mobius();
  }

  auto parts = split_commas(all);
  if (parts.size() != 4)
    throw SpecParseError("expected four comma-separated coefficients", all.offset);
  std::complex<double> coeffs[4];
  if (all.text.find('=') != std::string_view::npos) {
    const char* keys[4] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i) coeffs[i] = parse_complex_field(keyed(parts[i], keys[i]));
  } else {
    for (int i = 0; i < 4; ++i) coeffs[i] = parse_complex_field(parts[i]);
  }
  try {
    return MobiusMapd(coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
  } catch (const DomainError& e) {
    throw SpecParseError(e.what(), all.offset);
  }
}

std::string format_map_spec(const MobiusMapd& m) {
  auto fmt = [](std::complex<double> z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return std::string(buf);
  };
  return "a=" + fmt(m.a()) + ",b=" + fmt(m.b()) + ",c=" + fmt(m.c()) + ",d=" + fmt(m.d());
}

}  // namespace diriop
