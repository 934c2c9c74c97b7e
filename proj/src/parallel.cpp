// SPDX-License-Identifier: Apache-2.0
//
// spectra: optimal spectrum management for Gaussian interference channels
// Copyright (C) 2026 The spectra authors
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

#include "spectra/parallel.hpp"

#include <cstdlib>
#include <omp.h>
#include <string>

namespace spectra
{

int worker_count()
{
    const int available = omp_get_max_threads();
    if (const char *env = std::getenv("SPECTRA_THREADS"))
    {
        try
        {
            const int requested = std::stoi(env);
            if (requested > 0)
                return requested < available ? requested : available;
        }
        catch (const std::exception &)
        {
        }
    }
    return available;
}

} // namespace spectra
