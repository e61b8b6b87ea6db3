#pragma once

#include "ecst/analysis.hpp"
#include "ecst/cat_algebra.hpp"
#include "ecst/ecs.hpp"
#include "ecst/errors.hpp"
#include "ecst/fock_oracle.hpp"
#include "ecst/protocol.hpp"
