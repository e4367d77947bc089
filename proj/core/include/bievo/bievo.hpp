#pragma once

#include "bievo/errors.hpp"
#include "bievo/features.hpp"
#include "bievo/interference.hpp"
#include "bievo/log_complex.hpp"
#include "bievo/regime.hpp"
#include "bievo/toy_universe.hpp"
