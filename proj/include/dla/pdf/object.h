// Copyright 2026 The DLA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// In-memory model of PDF objects. Composite values are held through shared
// immutable pointers so that objects are cheap to copy.

#ifndef DLA_PDF_OBJECT_H_
#define DLA_PDF_OBJECT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dla::pdf {

struct ObjRef {
  int num = 0;
  int gen = 0;

  friend bool operator==(const ObjRef&, const ObjRef&) = default;
  friend auto operator<=>(const ObjRef&, const ObjRef&) = default;
};

struct Name {
  std::string value;

  friend bool operator==(const Name&, const Name&) = default;
};

class Object;
using Array = std::vector<Object>;
using Dict = std::map<std::string, Object, std::less<>>;

struct Stream;

class Object {
 public:
  enum class Type {
    kNull,
    kBool,
    kInt,
    kReal,
    kString,
    kName,
    kArray,
    kDict,
    kStream,
    kRef
  };

  Object() = default;
  explicit Object(bool v) : value_(v) {}
  explicit Object(int64_t v) : value_(v) {}
  explicit Object(double v) : value_(v) {}
  explicit Object(std::string bytes) : value_(std::move(bytes)) {}
  explicit Object(Name name) : value_(std::move(name)) {}
  explicit Object(Array a)
      : value_(std::make_shared<const Array>(std::move(a))) {}
  explicit Object(Dict d) : value_(std::make_shared<const Dict>(std::move(d))) {}
  explicit Object(std::shared_ptr<const Stream> s) : value_(std::move(s)) {}
  explicit Object(ObjRef r) : value_(r) {}

  Type type() const { return static_cast<Type>(value_.index()); }
  bool is_null() const { return type() == Type::kNull; }
  bool is_number() const {
    return type() == Type::kInt || type() == Type::kReal;
  }
  bool is_name() const { return type() == Type::kName; }
  bool is_name(std::string_view n) const {
    return is_name() && std::get<Name>(value_).value == n;
  }
  bool is_string() const { return type() == Type::kString; }
  bool is_array() const { return type() == Type::kArray; }
  bool is_dict() const { return type() == Type::kDict; }
  bool is_stream() const { return type() == Type::kStream; }
  bool is_ref() const { return type() == Type::kRef; }

  std::optional<bool> AsBool() const;
  std::optional<int64_t> AsInt() const;
  std::optional<double> AsNumber() const;
  const std::string* AsString() const;
  const std::string* AsName() const;
  const Array* AsArray() const;
  // A stream's dictionary is also returned here.
  const Dict* AsDict() const;
  const Stream* AsStream() const;
  std::optional<ObjRef> AsRef() const;

 private:
  std::variant<std::monostate, bool, int64_t, double, std::string, Name,
               std::shared_ptr<const Array>, std::shared_ptr<const Dict>,
               std::shared_ptr<const Stream>, ObjRef>
      value_;
};

struct Stream {
  Dict dict;
  std::string data;  // Raw (still filtered) bytes.
  size_t offset = 0;
};

// Looks up `key` in `dict`; returns nullptr when absent.
const Object* Find(const Dict& dict, std::string_view key);

}  // namespace dla::pdf

#endif  // DLA_PDF_OBJECT_H_
