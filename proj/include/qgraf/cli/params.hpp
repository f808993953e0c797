#pragma once

#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "qgraf/error.hpp"

namespace qgraf::cli {

using ParamMap = std::map<std::string, std::complex<double>>;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Reads one signed real starting at pos; returns false if nothing was read.
inline bool read_real(const std::string& s, std::size_t& pos, double& out) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  pos += static_cast<std::size_t>(end - begin);
  return true;
}

}  // namespace detail

/// Parses "0.3", "-2i", "0.3+0.2i", "1e-3-4e-2i", "i".
inline std::complex<double> parse_complex(const std::string& text) {
  const std::string s = detail::trim(text);
  auto fail = [&]() -> std::complex<double> {
    raise(ErrorKind::InvalidArgument, "cannot parse number '" + text + "'");
  };
  if (s.empty()) return fail();
  if (s.back() != 'i') {
    std::size_t pos = 0;
    double re = 0;
    if (!detail::read_real(s, pos, re) || pos != s.size()) return fail();
    return {re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  if (body.empty() || body == "+") return {0.0, 1.0};
  if (body == "-") return {0.0, -1.0};
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0, im = 0;
  std::string im_text = body;
  if (split != std::string::npos) {
    std::size_t pos = 0;
    const std::string re_text = body.substr(0, split);
    if (!detail::read_real(re_text, pos, re) || pos != re_text.size()) return fail();
    im_text = body.substr(split);
  }
  if (im_text == "+" || im_text == "-") {
    im = im_text == "+" ? 1.0 : -1.0;
  } else {
    std::size_t pos = 0;
    if (!detail::read_real(im_text, pos, im) || pos != im_text.size()) return fail();
  }
  return {re, im};
}

/// Comma-separated list; an entry "q^k" stands for the base q raised to k.
inline std::vector<std::complex<double>> parse_list(const std::string& text, double q) {
  std::vector<std::complex<double>> out;
  const std::string s = detail::trim(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = detail::trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.rfind("q^", 0) == 0) {
      std::string e = item.substr(2);
      if (e.size() > 2 && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
      const auto k = parse_complex(e);
      if (k.imag() != 0.0) raise(ErrorKind::InvalidArgument, "exponent must be real in '" + item + "'");
      out.emplace_back(std::pow(q, k.real()), 0.0);
    } else {
      out.push_back(parse_complex(item));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Splits "key=value" tokens.
inline std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> out;
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) raise(ErrorKind::InvalidArgument, "expected key=value, got '" + t + "'");
    out[t.substr(0, eq)] = t.substr(eq + 1);
  }
  return out;
}

}  // namespace qgraf::cli
