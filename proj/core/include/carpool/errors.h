// Copyright 2026 The Carpool Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CARPOOL_ERRORS_H_
#define CARPOOL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace carpool {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An Instance violates one of its structural invariants. The message names
// the offending element (e.g. "edges[3]: self-loop on node 2").
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// A session's destination cannot be reached from its source.
class InfeasibleSessionError : public Error {
 public:
  explicit InfeasibleSessionError(std::string session_id)
      : Error("session " + session_id + " unreachable"),
        session_id_(std::move(session_id)) {}

  const std::string& session_id() const { return session_id_; }

 private:
  std::string session_id_;
};

// Random instance generation ran out of retries.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// The message-passing simulation did not reach quiescence in time.
class NonQuiescenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace carpool

#endif  // CARPOOL_ERRORS_H_
