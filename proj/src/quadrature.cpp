// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/quadrature.hpp"

// header-only; this TU just anchors the target
