#pragma once

#include "loadsynth/calendar.hpp"
#include "loadsynth/composition.hpp"
#include "loadsynth/error.hpp"
#include "loadsynth/harmonic.hpp"
#include "loadsynth/io.hpp"
#include "loadsynth/morphing.hpp"
#include "loadsynth/pipeline.hpp"
#include "loadsynth/series.hpp"
