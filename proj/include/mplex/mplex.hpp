#pragma once

#include "commands.hpp"
#include "core_model.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "ingest.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "spectral.hpp"
#include "structure.hpp"
#include "svg.hpp"
#include "sweep.hpp"
#include "sweep_result.hpp"
#include "trust_weights.hpp"
