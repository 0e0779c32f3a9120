// Copyright 2026 The nosig Authors
//
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


#pragma once

#include "nosig/core/error.hpp"
#include "nosig/core/linalg.hpp"
#include "nosig/core/operator.hpp"
#include "nosig/core/parallel.hpp"
#include "nosig/core/serialize.hpp"
#include "nosig/field/fock.hpp"
#include "nosig/field/model.hpp"
#include "nosig/field/pinching.hpp"
#include "nosig/field/scalar_field.hpp"
#include "nosig/field/spinor.hpp"
#include "nosig/nosignal/blocks.hpp"
#include "nosig/nosignal/covariance.hpp"
#include "nosig/nosignal/criteria.hpp"
#include "nosig/nosignal/factorize.hpp"
#include "nosig/quantum/rng.hpp"
#include "nosig/quantum/states.hpp"
#include "nosig/signal/protocol.hpp"
