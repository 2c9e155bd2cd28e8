#pragma once

// Core analysis library. File formats live under aniso/io/.

#include "angles.hpp"
#include "bresenham.hpp"
#include "error.hpp"
#include "fft.hpp"
#include "filterbank.hpp"
#include "frequency.hpp"
#include "image.hpp"
#include "metrics.hpp"
#include "periodogram.hpp"
#include "profile.hpp"
#include "random.hpp"
#include "registration.hpp"
#include "rotate.hpp"
#include "synthgen.hpp"
#include "window.hpp"
