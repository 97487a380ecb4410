// Umbrella header.
#pragma once

#include "laxkit/axioms.hpp"
#include "laxkit/carrier.hpp"
#include "laxkit/coalgebra.hpp"
#include "laxkit/distance.hpp"
#include "laxkit/formula.hpp"
#include "laxkit/functor.hpp"
#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/json_io.hpp"
#include "laxkit/lifting.hpp"
#include "laxkit/modality.hpp"
#include "laxkit/moss.hpp"
#include "laxkit/random.hpp"
#include "laxkit/scalar.hpp"
#include "laxkit/transport.hpp"

namespace laxkit {
inline constexpr const char* version = "0.1.0";
}
