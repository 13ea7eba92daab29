#pragma once

#include "nabla/coalgebra.hpp"
#include "nabla/derivation.hpp"
#include "nabla/elem.hpp"
#include "nabla/error.hpp"
#include "nabla/final_sequence.hpp"
#include "nabla/flow.hpp"
#include "nabla/formula.hpp"
#include "nabla/functor.hpp"
#include "nabla/lifting.hpp"
#include "nabla/numeric.hpp"
#include "nabla/onestep.hpp"
#include "nabla/ops.hpp"
#include "nabla/parse.hpp"
#include "nabla/props.hpp"
#include "nabla/redistribution.hpp"
#include "nabla/relation.hpp"
