#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tgb/lang/ast.hpp"

namespace tgb::vm {

using Bytes = std::string;
using SegmentId = std::uint64_t;

// Segment id 0 is the null reference.
struct Ref {
  SegmentId segment = 0;
  std::int64_t offset = 0;

  bool is_null() const { return segment == 0; }
  auto operator<=>(const Ref&) const = default;
};

class Value;

struct Record {
  std::shared_ptr<const lang::RecordShape> shape;
  std::vector<Value> fields;
};

using Array = std::vector<Value>;

enum class ValueKind { Int, Float, Bytes, Ref, Record, Array };

const char* kind_name(ValueKind k);

class Value {
 public:
  using Storage = std::variant<std::int64_t, double, Bytes, Ref, Record, Array>;

  Value() : data_(std::int64_t{0}) {}
  explicit Value(Storage s) : data_(std::move(s)) {}

  static Value integer(std::int64_t v) { return Value(Storage(v)); }
  static Value floating(double v) { return Value(Storage(v)); }
  static Value bytes(Bytes v) { return Value(Storage(std::move(v))); }
  static Value ref(Ref r) { return Value(Storage(r)); }
  static Value null() { return Value(Storage(Ref{})); }
  static Value record(Record r) { return Value(Storage(std::move(r))); }
  static Value array(Array a) { return Value(Storage(std::move(a))); }

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool is(ValueKind k) const { return kind() == k; }

  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const Bytes& as_bytes() const { return std::get<Bytes>(data_); }
  Bytes& as_bytes() { return std::get<Bytes>(data_); }
  Ref as_ref() const { return std::get<Ref>(data_); }
  const Record& as_record() const { return std::get<Record>(data_); }
  Record& as_record() { return std::get<Record>(data_); }
  const Array& as_array() const { return std::get<Array>(data_); }
  Array& as_array() { return std::get<Array>(data_); }

  const Storage& storage() const { return data_; }

 private:
  Storage data_;
};

// Structural equality. Floats compare by bit pattern so NaN == NaN.
bool operator==(const Value& a, const Value& b);
bool operator==(const Record& a, const Record& b);

// Zero value of a declared type (0, 0.0, "", [], zero-filled record, null).
Value zero_value(const lang::Program& p, const lang::Type& t);

// Byte size used by the dump size limit: int/float 8, ref 16, bytes 8+n,
// record = sum of fields, array = 8 + sum of elements.
std::size_t encoded_size(const Value& v);

// Calls `fn(ref)` for every reference inside `v`, in pre-order.
template <typename Fn>
void for_each_ref(const Value& v, Fn&& fn) {
  switch (v.kind()) {
    case ValueKind::Ref: fn(v.as_ref()); break;
    case ValueKind::Record:
      for (const auto& f : v.as_record().fields) for_each_ref(f, fn);
      break;
    case ValueKind::Array:
      for (const auto& e : v.as_array()) for_each_ref(e, fn);
      break;
    default: break;
  }
}

template <typename Fn>
void for_each_ref_mut(Value& v, Fn&& fn) {
  switch (v.kind()) {
    case ValueKind::Ref: {
      Ref r = v.as_ref();
      fn(r);
      v = Value::ref(r);
      break;
    }
    case ValueKind::Record:
      for (auto& f : v.as_record().fields) for_each_ref_mut(f, fn);
      break;
    case ValueKind::Array:
      for (auto& e : v.as_array()) for_each_ref_mut(e, fn);
      break;
    default: break;
  }
}

// Debug/console rendering. Bytes are printed raw by `print`; this form quotes.
std::string format_value(const Value& v);

// Shortest decimal encoding: no leading zeros, '-' for negatives.
std::string decimal(std::int64_t v);

}  // namespace tgb::vm
