/** Browser bootstrap: mount the app against a same-origin or local service. */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8000";

const mount = document.getElementById("app");
if (!mount) throw new Error("missing #app mount point");

new App(mount, new ApiClient(baseUrl));
