#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "dly/delay.hpp"
#include "dly/errors.hpp"
#include "dly/rational.hpp"

namespace dly {

// Parser for the condition mini-language:
//   ident | pure(D) | startup | solsc | window_all(D,M) | window_any(D,M)
//   | meet(A,B) | join(A,B) | serial(A,B)
// with D, M rationals written p/q or as integer literals.
namespace detail {

class DcParser {
public:
  explicit DcParser(std::string_view text) : text_(text) {}

  Dc parse() {
    Dc dc = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("trailing input in condition expression at '" +
                        std::string(text_.substr(pos_)) + "'");
    return dc;
  }

private:
  Dc expr() {
    std::string name = word();
    if (name == "ident") return Dc::ident();
    if (name == "startup") return Dc::startup_mask();
    if (name == "solsc") return Dc::sol_sc();
    if (name == "pure") {
      open();
      Rat d = rational();
      close();
      return Dc::pure(std::move(d));
    }
    if (name == "window_all" || name == "window_any") {
      open();
      Rat d = rational();
      comma();
      Rat m = rational();
      close();
      return name == "window_all" ? Dc::window_all(std::move(d), std::move(m))
                                  : Dc::window_any(std::move(d), std::move(m));
    }
    if (name == "meet" || name == "join" || name == "serial") {
      open();
      Dc a = expr();
      comma();
      Dc b = expr();
      close();
      if (name == "meet") return Dc::meet(std::move(a), std::move(b));
      if (name == "join") return Dc::join(std::move(a), std::move(b));
      return Dc::serial(std::move(a), std::move(b));
    }
    throw parse_error("unknown condition '" + name + "'", 0, static_cast<int>(pos_));
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw parse_error("expected a condition name", 0, static_cast<int>(pos_ + 1));
    return std::string(text_.substr(start, pos_ - start));
  }

  Rat rational() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
      ++pos_;
    if (start == pos_) throw parse_error("expected a rational", 0, static_cast<int>(pos_ + 1));
    return parse_rat(text_.substr(start, pos_ - start));
  }

  void open() { expect('('); }
  void close() { expect(')'); }
  void comma() { expect(','); }
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw parse_error(std::string("expected '") + c + "'", 0, static_cast<int>(pos_ + 1));
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Dc parse_dc(std::string_view text) { return detail::DcParser(text).parse(); }

} // namespace dly
