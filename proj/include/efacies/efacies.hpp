#pragma once

#include "efacies/config.hpp"
#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"
#include "efacies/facies.hpp"
#include "efacies/kde.hpp"
#include "efacies/kmeans.hpp"
#include "efacies/kselect.hpp"
#include "efacies/las.hpp"
#include "efacies/metrics.hpp"
#include "efacies/petro.hpp"
#include "efacies/pipeline.hpp"
#include "efacies/qc.hpp"
#include "efacies/random.hpp"
#include "efacies/report.hpp"
#include "efacies/settings.hpp"
#include "efacies/silhouette.hpp"
#include "efacies/svg.hpp"
#include "efacies/synthwell.hpp"
