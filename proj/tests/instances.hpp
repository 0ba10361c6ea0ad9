#pragma once

#include "sfdlog/pipeline.hpp"

namespace fixtures {

inline sfdlog::PipelineConfig kummer_config()
{
    sfdlog::PipelineConfig c;
    c.p = 3;
    c.n = 2;
    c.C = 1;
    c.D = 1;
    c.smoothBound = sfdlog::BigInt(4);
    return c;
}

inline sfdlog::PipelineConfig q4_config()
{
    sfdlog::PipelineConfig c;
    c.p = 2;
    c.n = 3;
    c.C = 1;
    c.D = 2;
    c.smoothBound = sfdlog::BigInt(5);
    c.selection = sfdlog::SelectionMode::Search;
    return c;
}

inline const sfdlog::Instance& kummer()
{
    static const sfdlog::Instance inst = sfdlog::build_instance(kummer_config());
    return inst;
}

inline const sfdlog::Instance& q4()
{
    static const sfdlog::Instance inst = sfdlog::build_instance(q4_config());
    return inst;
}

} // namespace fixtures
