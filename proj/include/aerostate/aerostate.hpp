#pragma once

#include "aerostate/core/angles.hpp"
#include "aerostate/core/camera.hpp"
#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/core/gaussian.hpp"
#include "aerostate/core/matching.hpp"
#include "aerostate/core/parallel.hpp"
#include "aerostate/core/pose.hpp"
#include "aerostate/core/quaternion.hpp"
#include "aerostate/core/random.hpp"
#include "aerostate/core/resample.hpp"
#include "aerostate/core/sigma_points.hpp"
#include "aerostate/flight_log.hpp"
#include "aerostate/harness/evaluation.hpp"
#include "aerostate/harness/log_io.hpp"
#include "aerostate/harness/map_io.hpp"
#include "aerostate/harness/pipeline.hpp"
#include "aerostate/harness/trace_io.hpp"
#include "aerostate/mcl/feature_map.hpp"
#include "aerostate/mcl/localizer.hpp"
#include "aerostate/mcl/measurement_model.hpp"
#include "aerostate/mcl/motion_model.hpp"
#include "aerostate/mcl/types.hpp"
#include "aerostate/sim/simulator.hpp"
#include "aerostate/sim/trajectory.hpp"
#include "aerostate/sim/world.hpp"
#include "aerostate/slam/fastslam.hpp"
#include "aerostate/slam/landmark_ekf.hpp"
#include "aerostate/slam/map_update.hpp"
#include "aerostate/ukf/ema.hpp"
#include "aerostate/ukf/filter.hpp"
#include "aerostate/ukf/models.hpp"
