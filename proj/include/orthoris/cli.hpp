// SPDX-License-Identifier: Apache-2.0
//
// orthoris - channel orthogonalization with reconfigurable surfaces
// Copyright (C) 2026 The orthoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orthoris
{
    // args excludes the program name. CSV / JSON go to `out` unless --out is
    // given; diagnostics and usage go to `err`.
    int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
    int cli_main(int argc, char **argv);

    // Invariant suite behind `orthoris selftest`; one PASS/FAIL line per check.
    bool run_selftest(std::ostream &out);
} // namespace orthoris
