import { answer } from "./probe_dep.js";
export const twice = answer * 2;
