#pragma once

#include "damflow/core.hpp"
#include "damflow/cubic.hpp"
#include "damflow/wavecurves.hpp"
#include "damflow/connection.hpp"
#include "damflow/leftwaves.hpp"
#include "damflow/damsolver.hpp"
#include "damflow/sampler.hpp"
#include "damflow/verify.hpp"
