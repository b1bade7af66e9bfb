export { ApiClient, ApiError } from "./api.js";
export type { FetchLike } from "./api.js";
export { MatrixGridViewModel } from "./matrixGrid.js";
export type { MatrixGridOptions } from "./matrixGrid.js";
export { SessionView } from "./sessionView.js";
export { ResultsView } from "./results.js";
export { SAATY_OPTIONS, nearestOption, isScaleValue } from "./saaty.js";
export type * from "./types.js";
