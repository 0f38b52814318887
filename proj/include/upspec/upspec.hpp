#pragma once

#include "upspec/classnorm.hpp"
#include "upspec/cochain.hpp"
#include "upspec/combinatorics.hpp"
#include "upspec/complex.hpp"
#include "upspec/expansion.hpp"
#include "upspec/experiment.hpp"
#include "upspec/garland.hpp"
#include "upspec/gf2.hpp"
#include "upspec/io.hpp"
#include "upspec/models.hpp"
#include "upspec/operators.hpp"
#include "upspec/rng.hpp"
#include "upspec/spectrum.hpp"
#include "upspec/version.hpp"
