#pragma once

#include "engine.hpp"
#include "herald.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "operators.hpp"
#include "state.hpp"
#include "timebin.hpp"
