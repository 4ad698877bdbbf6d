// Copyright 2026 The qpgnet Authors
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

#include <ostream>

#include "qpgnet/config.hpp"

namespace qpgnet {

/// Executes one configured experiment and writes its artifacts under
/// config.output_dir. Returns the process exit code: 0 on success, 1 on a
/// numerical or I/O failure, 2 on a configuration error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qpgnet
