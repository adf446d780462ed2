#pragma once

#define RAONET_VERSION "0.1.0"
