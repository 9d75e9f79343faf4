/* Copyright 2026 The Hyperlab Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Umbrella header.

#ifndef HYPERLAB_HYPERLAB_HPP
#define HYPERLAB_HYPERLAB_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/formulas/ast.hpp"
#include "hyperlab/formulas/eval.hpp"
#include "hyperlab/formulas/parser.hpp"
#include "hyperlab/formulas/transfer.hpp"
#include "hyperlab/hfset.hpp"
#include "hyperlab/hyperarith.hpp"
#include "hyperlab/hyperexpr.hpp"
#include "hyperlab/numbers.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/tarski/definability.hpp"
#include "hyperlab/tarski/formula.hpp"
#include "hyperlab/tarski/truth.hpp"
#include "hyperlab/toyfp.hpp"

#endif  // HYPERLAB_HYPERLAB_HPP
