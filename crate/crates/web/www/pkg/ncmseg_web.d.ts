/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    height(): number;
    imageRgba(): Uint8Array;
    mapRgba(window: number, which: string): Uint8Array;
    constructor(width: number, height: number, blobs: number, noise: number, seed: bigint);
    segment(clusters: number, fuzzifier: number, w1: number, w2: number, w3: number, delta: number, window: number, max_iter: number): Segmentation;
    truthRgba(): Uint8Array;
    width(): number;
}

export class Segmentation {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    centers(): Float64Array;
    converged(): boolean;
    /**
     * Dice against the phantom's ground truth; NaN when undefined.
     */
    dice(): number;
    fluidPixels(): number;
    iterations(): number;
    overlayRgba(): Uint8Array;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_segmentation_free: (a: number, b: number) => void;
    readonly demo_height: (a: number) => number;
    readonly demo_imageRgba: (a: number) => [number, number];
    readonly demo_mapRgba: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_new: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
    readonly demo_segment: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly demo_truthRgba: (a: number) => [number, number, number, number];
    readonly demo_width: (a: number) => number;
    readonly segmentation_centers: (a: number) => [number, number];
    readonly segmentation_converged: (a: number) => number;
    readonly segmentation_dice: (a: number) => number;
    readonly segmentation_fluidPixels: (a: number) => number;
    readonly segmentation_iterations: (a: number) => number;
    readonly segmentation_overlayRgba: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
