#pragma once

#include "wpc/channel.hpp"
#include "wpc/df.hpp"
#include "wpc/dt.hpp"
#include "wpc/montecarlo.hpp"
#include "wpc/oracle.hpp"
#include "wpc/params.hpp"
