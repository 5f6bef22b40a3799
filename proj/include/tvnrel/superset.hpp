/// @file superset.hpp
/// @brief Upward closure of a set family: from the journey ZDD to the family
/// of all edge subsets that contain some journey.

#pragma once

#include "tvnrel/dd.hpp"
#include "tvnrel/deadline.hpp"

namespace tvnrel {

/// BDD of { U : some J in `journeys` has J ⊆ U }. Levels the input ZDD skips
/// become don't-cares, so no level bookkeeping is needed.
NodeRef superset_to_bdd(DiagramStore &store, NodeRef journeys, Var m,
                        const Deadline &deadline = {});

/// Same family as a ZDD over variables 1..m. Skipped input levels are
/// materialized as nodes with equal children.
NodeRef superset_to_zdd(DiagramStore &store, NodeRef journeys, Var m,
                        const Deadline &deadline = {});

} // namespace tvnrel
