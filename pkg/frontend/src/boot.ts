import { ApiClient } from './api';
import { initApp } from './main';

// served by the same process that hosts /v1, so relative URLs work
initApp(new ApiClient(''));
