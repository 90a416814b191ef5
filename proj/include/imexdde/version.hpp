#pragma once

#define IMEXDDE_VERSION_MAJOR 0
#define IMEXDDE_VERSION_MINOR 1
#define IMEXDDE_VERSION_PATCH 0
#define IMEXDDE_VERSION_STRING "0.1.0"
