#pragma once

#include "gregory/battery.hpp"
#include "gregory/bernoulli.hpp"
#include "gregory/cut_plane.hpp"
#include "gregory/density.hpp"
#include "gregory/differences.hpp"
#include "gregory/quadrature.hpp"
#include "gregory/rational.hpp"
#include "gregory/reporting.hpp"
