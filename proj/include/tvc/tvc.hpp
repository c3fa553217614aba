#pragma once

// Umbrella include for the whole toolkit.

#include "tvc/bench.hpp"
#include "tvc/config.hpp"
#include "tvc/control.hpp"
#include "tvc/csv.hpp"
#include "tvc/errors.hpp"
#include "tvc/flight.hpp"
#include "tvc/gimbal.hpp"
#include "tvc/math.hpp"
#include "tvc/propulsion.hpp"
#include "tvc/rng.hpp"
#include "tvc/scenario.hpp"
#include "tvc/servo.hpp"
#include "tvc/stress.hpp"
#include "tvc/text.hpp"
