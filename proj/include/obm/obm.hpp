#pragma once

#include "obm/death_process.hpp"
#include "obm/factor_lp.hpp"
#include "obm/instances.hpp"
#include "obm/legacy_ode.hpp"
#include "obm/numeric.hpp"
#include "obm/report.hpp"
#include "obm/rng.hpp"
#include "obm/simulate.hpp"
