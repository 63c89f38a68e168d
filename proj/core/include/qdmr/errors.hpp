// Copyright 2026 The qdmr-sparql Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdmr {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed surface syntax (decomposition text, SPARQL text, CSV, JSON).
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// An identifier that does not resolve against the schema.
class UnknownEntityError : public Error {
 public:
  using Error::Error;
};

// An operator applied to the wrong number or kind of arguments.
class BadArityError : public Error {
 public:
  using Error::Error;
};

// A step referencing itself or a later step.
class ForwardRefError : public Error {
 public:
  using Error::Error;
};

// No sequence of key/foreign-key arcs connects two columns.
class NoJoinPathError : public Error {
 public:
  using Error::Error;
};

// A structurally valid logical form the query builder cannot express.
class UnsupportedShapeError : public Error {
 public:
  using Error::Error;
};

// Query text using a feature outside the supported SPARQL subset.
class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

// An API precondition violated by the caller.
class MisuseError : public Error {
 public:
  using Error::Error;
};

// Unreadable or ill-formed input files.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdmr
