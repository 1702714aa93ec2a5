#pragma once

#include "config.hpp"
#include "ecdf.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "galois.hpp"
#include "mds_codec.hpp"
#include "meanfield.hpp"
#include "orderstats.hpp"
#include "params.hpp"
#include "queue_sim.hpp"
#include "rk4.hpp"
#include "svg_chart.hpp"
#include "table.hpp"
#include "version.hpp"
