#include "tgb/vm/value.hpp"

#include <charconv>
#include <cstring>

namespace tgb::vm {

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Int: return "int";
    case ValueKind::Float: return "float";
    case ValueKind::Bytes: return "bytes";
    case ValueKind::Ref: return "ref";
    case ValueKind::Record: return "record";
    case ValueKind::Array: return "array";
  }
  return "?";
}

bool operator==(const Record& a, const Record& b) {
  if (a.shape != b.shape) {
    if (!a.shape || !b.shape) return false;
    if (a.shape->name != b.shape->name || a.shape->fields != b.shape->fields) return false;
  }
  return a.fields == b.fields;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::Int: return a.as_int() == b.as_int();
    case ValueKind::Float: {
      const double x = a.as_float();
      const double y = b.as_float();
      return std::memcmp(&x, &y, sizeof x) == 0;
    }
    case ValueKind::Bytes: return a.as_bytes() == b.as_bytes();
    case ValueKind::Ref: return a.as_ref() == b.as_ref();
    case ValueKind::Record: return a.as_record() == b.as_record();
    case ValueKind::Array: return a.as_array() == b.as_array();
  }
  return false;
}

Value zero_value(const lang::Program& p, const lang::Type& t) {
  using K = lang::Type::Kind;
  switch (t.kind) {
    case K::Int: return Value::integer(0);
    case K::Float: return Value::floating(0.0);
    case K::Bytes: return Value::bytes({});
    case K::Array: return Value::array({});
    case K::Ref: return Value::null();
    case K::Record: {
      const lang::RecordDef* def = p.find_record(t.record);
      Record r;
      r.shape = def->shape;
      for (const auto& f : def->fields) r.fields.push_back(zero_value(p, f.type));
      return Value::record(std::move(r));
    }
  }
  return {};
}

std::size_t encoded_size(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Int:
    case ValueKind::Float: return 8;
    case ValueKind::Ref: return 16;
    case ValueKind::Bytes: return 8 + v.as_bytes().size();
    case ValueKind::Record: {
      std::size_t n = 0;
      for (const auto& f : v.as_record().fields) n += encoded_size(f);
      return n;
    }
    case ValueKind::Array: {
      std::size_t n = 8;
      for (const auto& e : v.as_array()) n += encoded_size(e);
      return n;
    }
  }
  return 0;
}

std::string decimal(std::int64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

namespace {

std::string quote_bytes(const Bytes& b) {
  static const char* hex = "0123456789abcdef";
  std::string out = "\"";
  for (unsigned char c : b) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c >= 0x20 && c < 0x7F) {
      out.push_back(static_cast<char>(c));
    } else {
      out += "\\x";
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out + "\"";
}

}  // namespace

std::string format_value(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Int: return decimal(v.as_int());
    case ValueKind::Float: {
      char buf[64];
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.as_float());
      return std::string(buf, p);
    }
    case ValueKind::Bytes: return quote_bytes(v.as_bytes());
    case ValueKind::Ref: {
      const Ref r = v.as_ref();
      if (r.is_null()) return "null";
      return "ref(" + std::to_string(r.segment) + "+" + std::to_string(r.offset) + ")";
    }
    case ValueKind::Record: {
      const Record& r = v.as_record();
      std::string out = (r.shape ? r.shape->name : std::string("?")) + "{";
      for (std::size_t i = 0; i < r.fields.size(); ++i) {
        if (i) out += ", ";
        out += (r.shape && i < r.shape->fields.size() ? r.shape->fields[i] : std::string("?")) + ": " +
               format_value(r.fields[i]);
      }
      return out + "}";
    }
    case ValueKind::Array: {
      std::string out = "[";
      const Array& a = v.as_array();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += format_value(a[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

}  // namespace tgb::vm
