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

#include "dla/pdf/object.h"

namespace dla::pdf {

std::optional<bool> Object::AsBool() const {
  if (const auto* b = std::get_if<bool>(&value_)) return *b;
  return std::nullopt;
}

std::optional<int64_t> Object::AsInt() const {
  if (const auto* i = std::get_if<int64_t>(&value_)) return *i;
  if (const auto* d = std::get_if<double>(&value_)) {
    return static_cast<int64_t>(*d);
  }
  return std::nullopt;
}

std::optional<double> Object::AsNumber() const {
  if (const auto* i = std::get_if<int64_t>(&value_)) {
    return static_cast<double>(*i);
  }
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  return std::nullopt;
}

const std::string* Object::AsString() const {
  return std::get_if<std::string>(&value_);
}

const std::string* Object::AsName() const {
  if (const auto* n = std::get_if<Name>(&value_)) return &n->value;
  return nullptr;
}

const Array* Object::AsArray() const {
  if (const auto* a = std::get_if<std::shared_ptr<const Array>>(&value_)) {
    return a->get();
  }
  return nullptr;
}

const Dict* Object::AsDict() const {
  if (const auto* d = std::get_if<std::shared_ptr<const Dict>>(&value_)) {
    return d->get();
  }
  if (const auto* s = std::get_if<std::shared_ptr<const Stream>>(&value_)) {
    return &(*s)->dict;
  }
  return nullptr;
}

const Stream* Object::AsStream() const {
  if (const auto* s = std::get_if<std::shared_ptr<const Stream>>(&value_)) {
    return s->get();
  }
  return nullptr;
}

std::optional<ObjRef> Object::AsRef() const {
  if (const auto* r = std::get_if<ObjRef>(&value_)) return *r;
  return std::nullopt;
}

const Object* Find(const Dict& dict, std::string_view key) {
  const auto it = dict.find(key);
  return it == dict.end() ? nullptr : &it->second;
}

}  // namespace dla::pdf
