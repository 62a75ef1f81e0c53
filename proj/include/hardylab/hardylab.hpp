#pragma once

#include "hardylab/specfun.hpp"
#include "hardylab/quadrature.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/spectrum.hpp"
#include "hardylab/kelvin.hpp"
#include "hardylab/evolution.hpp"
#include "hardylab/wholespace.hpp"
#include "hardylab/approx.hpp"
#include "hardylab/report.hpp"
