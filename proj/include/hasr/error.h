// include/hasr/error.h

// Copyright 2026  The hasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HASR_ERROR_H_
#define HASR_ERROR_H_

#include <stdexcept>
#include <string>

namespace hasr {

/// Exception carrying a short machine-readable code (e.g. "ArpaParse")
/// alongside the human-readable message. The command-line tool prints these
/// as "ERROR <code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string &code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace hasr

#endif  // HASR_ERROR_H_
