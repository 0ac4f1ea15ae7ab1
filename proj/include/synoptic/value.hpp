#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace synoptic {

enum class Kind { Event, Bool, Int };

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Event: return "event";
    case Kind::Bool: return "bool";
    case Kind::Int: return "int";
  }
  return "?";
}

// A value carried by a present signal. Events are unit presence tokens:
// `?` reads a present event as true, `^` turns a true boolean into a
// present event.
class Value {
public:
  Value() : v_(std::int64_t{0}) {}

  static Value event() { return Value(EventTag{}); }
  static Value boolean(bool b) { return Value(b); }
  static Value integer(std::int64_t i) { return Value(i); }

  Kind kind() const {
    if (std::holds_alternative<EventTag>(v_)) return Kind::Event;
    if (std::holds_alternative<bool>(v_)) return Kind::Bool;
    return Kind::Int;
  }

  bool as_bool() const {
    if (kind() != Kind::Bool) throw std::logic_error("value is not a bool");
    return std::get<bool>(v_);
  }

  std::int64_t as_int() const {
    if (kind() != Kind::Int) throw std::logic_error("value is not an int");
    return std::get<std::int64_t>(v_);
  }

  bool operator==(const Value& o) const { return v_ == o.v_; }
  bool operator!=(const Value& o) const { return !(*this == o); }

  std::string to_string() const {
    switch (kind()) {
      case Kind::Event: return "1";
      case Kind::Bool: return as_bool() ? "true" : "false";
      case Kind::Int: return std::to_string(as_int());
    }
    return "?";
  }

  // Zero of a kind: initial memory for variables that were never written.
  static Value zero_of(Kind k) {
    switch (k) {
      case Kind::Event: return event();
      case Kind::Bool: return boolean(false);
      case Kind::Int: return integer(0);
    }
    return integer(0);
  }

private:
  struct EventTag {
    bool operator==(const EventTag&) const { return true; }
  };
  std::variant<EventTag, bool, std::int64_t> v_;

  explicit Value(EventTag t) : v_(t) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(std::int64_t i) : v_(i) {}
};

}  // namespace synoptic
